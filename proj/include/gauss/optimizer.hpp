#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gauss/channels.hpp"
#include "gauss/states.hpp"

namespace gauss {

struct OptimizerConfig {
  int starts = 16;
  unsigned seed = 1;
  int max_iters = 500;
  double objective_tol = 1e-10;
  double param_tol = 1e-8;
  double log_z_bound = 5.0;  // z ranges over [e^-L, e^L]
  double p = 2.0;
  bool use_reduction = true;
};

enum class OptStatus { kConverged, kNonConvergence };

struct PurityReport {
  std::string channel_description;
  double p = 0.0;
  double inf_f_p = 0.0;
  double xi_p = 0.0;             // maximal output p-norm, (2^n / xi_p)^p = inf F_p
  double trace_power_opt = 0.0;  // tr rho^p at the optimum
  PureStateParams argmin_params;
  CovarianceMatrix argmin_cm;          // original channel frame
  CovarianceMatrix argmin_cm_reduced;  // frame the optimizer ran in
  bool argmin_asymptotic = false;      // det X_i = 0: infimum reached in a limit
  bool reduction_used = false;
  bool log_z_bound_may_be_active = false;  // singular Y: divergence bound unproven
  std::vector<double> per_factor_inf;
  double multiplicativity_ratio = std::numeric_limits<double>::quiet_NaN();
  std::string verdict;
  double gradient_norm_at_argmin = 0.0;
  OptStatus status = OptStatus::kConverged;
};

// F_p of the channel output for the pure input described by params.
double objective(const GaussianChannel& ch, double p,
                 const PureStateParams& params);

struct GradientResult {
  Vec gradient;  // one entry per generator K_i
  bool finite_difference_fallback = false;
};

// Directional derivatives of F_p along the symplectic-orbit parametrization
// of pure inputs around the Williamson-corotated gamma' of a reduced channel
// (X = x*identity). Falls back to central finite differences when the output
// spectrum is degenerate.
GradientResult gradient_at(const GaussianChannel& ch, double p,
                           const CovarianceMatrix& gamma);

PurityReport optimize(const GaussianChannel& ch, const OptimizerConfig& cfg);

enum class MultiplicativityCase { kNone = 0, kIdenticalSingleMode = 1,
                             kEqualDetPositiveY = 2, kPTwoNonsingularX = 3 };

struct MultiplicativityReport {
  PurityReport joint;
  std::vector<PurityReport> factors;
  double ratio = 0.0;
  double off_block_norm = 0.0;  // of the joint argmin in the optimizer frame
  bool multiplicative = false;
  MultiplicativityCase covered_case = MultiplicativityCase::kNone;
};

MultiplicativityReport multiplicativity_check(
    const std::vector<GaussianChannel>& factors, double p,
    const OptimizerConfig& cfg);

// Output symplectic eigenvalues of the reduced identical-channel problem for
// a squeezed product input: nu_i = sqrt(x^4 + y^2 + x^2 y (z_i + 1/z_i)),
// sorted decreasingly.
std::vector<double> identical_channel_spectrum(double x, double y,
                                               const std::vector<double>& zs);

struct MajorizationAudit {
  int samples = 0;
  int passed = 0;  // verdict did not fail
  double worst_margin = 0.0;
  std::vector<double> optimal_spectrum;
};

// Checks that the optimal output of a tensor power of one single-mode channel
// majorizes the outputs of randomly sampled pure Gaussian inputs.
MajorizationAudit majorization_audit(const GaussianChannel& ch, int samples,
                                     const OptimizerConfig& cfg,
                                     double eps = 1e-10);

}  // namespace gauss
