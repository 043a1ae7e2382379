#pragma once

#include <vector>

#include "gauss/symplectic.hpp"

namespace gauss {

// Euler parametrization of a pure n-mode state: n^2 compact-subgroup
// coefficients l and n squeezing parameters z > 0.
struct PureStateParams {
  int n = 0;
  Vec l;  // size n^2
  Vec z;  // size n, strictly positive

  static PureStateParams vacuum(int n);
};

// gamma = exp(-sum l_i L_i)^T D(z) exp(-sum l_i L_i).
CovarianceMatrix pure_cm_from_params(const PureStateParams& params);

// gamma -> exp(sum k_i K_i)^T gamma exp(sum k_i K_i); symplectic congruence,
// so the symplectic spectrum is untouched. k has one entry per generator.
CovarianceMatrix perturbed_cm(const CovarianceMatrix& gamma, const Vec& k);

// (x+1)^p - (x-1)^p for x >= 1, p > 1, evaluated in a form that stays
// accurate for p near 1 and for large x.
double f_p(double x, double p);
double f_p_deriv(double x, double p);

struct PurityValue {
  double p = 0.0;
  double trace_power = 0.0;  // tr rho^p
  double p_norm = 0.0;       // (tr rho^p)^{1/p}
  double renyi = 0.0;        // ln(tr rho^p) / (1 - p)
};

// F_p = prod f_p(nu_i) over a symplectic spectrum.
double big_f_p(const std::vector<double>& nus, double p);

PurityValue trace_power(const CovarianceMatrix& gamma, double p);
PurityValue purity_from_spectrum(const std::vector<double>& nus, double p);

double von_neumann_entropy(const CovarianceMatrix& gamma);
double von_neumann_entropy_from_spectrum(const std::vector<double>& nus);

// Occupation probabilities of a single-mode thermal state with symplectic
// eigenvalue nu, truncated at K; the geometric tail is carried exactly.
struct ThermalSpectrum {
  double nu = 1.0;
  std::vector<double> probabilities;
  int truncation = 0;
  double tail_mass = 0.0;
};

ThermalSpectrum thermal_spectrum(double nu, int truncation);

enum class MajorizationVerdict { kHolds, kInconclusiveWithinEps, kFails };

struct MajorizationResult {
  MajorizationVerdict verdict = MajorizationVerdict::kFails;
  double min_margin = 0.0;  // minimum over r of sum_a - sum_b partial sums
  double tail_bound = 0.0;
};

// Partial-sum comparison of the sorted joint thermal spectra of two n-mode
// states; the box truncation K applies per mode and the total omitted mass
// must stay below eps.
MajorizationResult majorizes(const std::vector<double>& a,
                             const std::vector<double>& b, int truncation,
                             double eps);

// gamma = gamma_p + v with gamma_p pure and v positive semidefinite.
struct PureDecomposition {
  CovarianceMatrix gamma_p;
  Mat v;
};

PureDecomposition pure_state_decomposition(const CovarianceMatrix& gamma);

}  // namespace gauss
