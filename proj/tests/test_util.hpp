#pragma once

#include <random>
#include <vector>

#include "gauss/states.hpp"
#include "gauss/symplectic.hpp"

namespace testutil {

using gauss::Mat;
using gauss::Vec;

inline Mat random_symplectic(int n, std::mt19937_64& rng, double scale = 0.4) {
  const gauss::GeneratorBasis basis = gauss::generator_basis(n);
  std::normal_distribution<double> normal(0.0, scale);
  Mat a = Mat::Zero(2 * n, 2 * n);
  for (const Mat& k : basis.generators) a += normal(rng) * k;
  return gauss::matrix_exp(a);
}

// Valid state CM with symplectic spectrum drawn from [1, nu_max].
inline gauss::CovarianceMatrix random_cm(int n, std::mt19937_64& rng,
                                         double nu_max = 3.0) {
  std::uniform_real_distribution<double> unif(1.0, nu_max);
  Mat d = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const double nu = unif(rng);
    d(2 * i, 2 * i) = nu;
    d(2 * i + 1, 2 * i + 1) = nu;
  }
  const Mat s = random_symplectic(n, rng);
  Mat g = s.transpose() * d * s;
  g = 0.5 * (g + g.transpose());
  return gauss::CovarianceMatrix(n, g);
}

inline gauss::PureStateParams random_pure_params(int n, std::mt19937_64& rng,
                                                 double u_range = 1.0) {
  std::normal_distribution<double> normal(0.0, 0.6);
  std::uniform_real_distribution<double> unif(-u_range, u_range);
  gauss::PureStateParams p;
  p.n = n;
  p.l.resize(n * n);
  p.z.resize(n);
  for (int i = 0; i < n * n; ++i) p.l(i) = normal(rng);
  for (int i = 0; i < n; ++i) p.z(i) = std::exp(unif(rng));
  return p;
}

// Independent route to the symplectic spectrum: moduli of the (purely
// imaginary) eigenvalues of sigma * gamma, computed by a complex eigensolver.
inline std::vector<double> spectrum_via_complex(
    const gauss::CovarianceMatrix& gamma) {
  const Mat sig = gauss::symplectic_form(gamma.n);
  Eigen::EigenSolver<Mat> es(sig * gamma.matrix);
  std::vector<double> mods;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    mods.push_back(std::abs(es.eigenvalues()(i)));
  }
  std::sort(mods.begin(), mods.end(), std::greater<double>());
  std::vector<double> nus;
  for (size_t i = 0; i + 1 < mods.size(); i += 2) {
    nus.push_back(0.5 * (mods[i] + mods[i + 1]));
  }
  return nus;
}

}  // namespace testutil
