#include "gauss/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gauss {

namespace {

double clamp_nu(double nu) {
  if (nu < 1.0 - kValidityTol) {
    throw std::invalid_argument("symplectic eigenvalue below 1: " +
                                std::to_string(nu));
  }
  return std::abs(nu - 1.0) <= kValidityTol ? 1.0 : nu;
}

}  // namespace

PureStateParams PureStateParams::vacuum(int n) {
  PureStateParams params;
  params.n = n;
  params.l = Vec::Zero(n * n);
  params.z = Vec::Ones(n);
  return params;
}

CovarianceMatrix pure_cm_from_params(const PureStateParams& params) {
  const int n = params.n;
  if (n < 1 || params.l.size() != n * n || params.z.size() != n) {
    throw std::invalid_argument("pure_cm_from_params: bad parameter shapes");
  }
  if (!params.l.allFinite() || (params.z.array() <= 0.0).any()) {
    throw std::invalid_argument(
        "pure_cm_from_params: l must be finite and z strictly positive");
  }
  const GeneratorBasis basis = generator_basis(n);
  Mat a = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n * n; ++i) {
    a -= params.l(i) * basis.generators[i];
  }
  const Mat o = matrix_exp(a);
  Mat d = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    d(2 * i, 2 * i) = params.z(i);
    d(2 * i + 1, 2 * i + 1) = 1.0 / params.z(i);
  }
  return CovarianceMatrix(n, o.transpose() * d * o);
}

CovarianceMatrix perturbed_cm(const CovarianceMatrix& gamma, const Vec& k) {
  const int n = gamma.n;
  const GeneratorBasis basis = generator_basis(n);
  if (k.size() != basis.count()) {
    throw std::invalid_argument(
        "perturbed_cm: coefficient count does not match generator basis");
  }
  Mat a = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < basis.count(); ++i) {
    a += k(i) * basis.generators[i];
  }
  const Mat e = matrix_exp(a);
  return CovarianceMatrix(n, e.transpose() * gamma.matrix * e);
}

double f_p(double x, double p) {
  if (!(x >= 1.0)) throw std::invalid_argument("f_p: x must be >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("f_p: p must be > 1");
  if (x == 1.0) return std::pow(2.0, p);
  // (x+1)^p - (x-1)^p = -(x+1)^p * expm1(p * ln((x-1)/(x+1)))
  const double log_ratio = std::log1p(-2.0 / (x + 1.0));
  return -std::exp(p * std::log(x + 1.0)) * std::expm1(p * log_ratio);
}

double f_p_deriv(double x, double p) {
  if (!(x >= 1.0)) throw std::invalid_argument("f_p_deriv: x must be >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("f_p_deriv: p must be > 1");
  if (x == 1.0) return p * std::pow(2.0, p - 1.0);
  const double log_ratio = std::log1p(-2.0 / (x + 1.0));
  return -p * std::exp((p - 1.0) * std::log(x + 1.0)) *
         std::expm1((p - 1.0) * log_ratio);
}

double big_f_p(const std::vector<double>& nus, double p) {
  double result = 1.0;
  for (double nu : nus) result *= f_p(clamp_nu(nu), p);
  return result;
}

PurityValue purity_from_spectrum(const std::vector<double>& nus, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("purity: p must be > 1");
  double log_tp = 0.0;
  for (double nu : nus) {
    log_tp += p * std::log(2.0) - std::log(f_p(clamp_nu(nu), p));
  }
  PurityValue value;
  value.p = p;
  value.trace_power = std::exp(log_tp);
  value.p_norm = std::exp(log_tp / p);
  value.renyi = log_tp / (1.0 - p);
  return value;
}

PurityValue trace_power(const CovarianceMatrix& gamma, double p) {
  check_state(gamma);
  return purity_from_spectrum(symplectic_eigenvalues(gamma), p);
}

double von_neumann_entropy_from_spectrum(const std::vector<double>& nus) {
  double s = 0.0;
  for (double nu_raw : nus) {
    const double nu = clamp_nu(nu_raw);
    if (nu == 1.0) continue;
    const double up = (nu + 1.0) / 2.0;
    const double down = (nu - 1.0) / 2.0;
    s += up * std::log(up) - down * std::log(down);
  }
  return s;
}

double von_neumann_entropy(const CovarianceMatrix& gamma) {
  check_state(gamma);
  return von_neumann_entropy_from_spectrum(symplectic_eigenvalues(gamma));
}

ThermalSpectrum thermal_spectrum(double nu, int truncation) {
  if (!(nu >= 1.0)) throw std::invalid_argument("thermal_spectrum: nu < 1");
  if (truncation < 0) {
    throw std::invalid_argument("thermal_spectrum: negative truncation");
  }
  const double q = (nu - 1.0) / (nu + 1.0);
  ThermalSpectrum spec;
  spec.nu = nu;
  spec.truncation = truncation;
  spec.probabilities.resize(truncation + 1);
  double lam = 2.0 / (nu + 1.0);
  for (int k = 0; k <= truncation; ++k) {
    spec.probabilities[k] = lam;
    lam *= q;
  }
  spec.tail_mass = std::pow(q, truncation + 1);
  return spec;
}

namespace {

// Joint spectrum of a product thermal state over a per-mode truncation box,
// sorted decreasingly; tail is the exactly known omitted mass.
std::pair<std::vector<double>, double> joint_spectrum(
    const std::vector<double>& nus, int truncation) {
  std::vector<double> probs = {1.0};
  double kept_mass = 1.0;
  for (double nu : nus) {
    const ThermalSpectrum mode = thermal_spectrum(nu, truncation);
    kept_mass *= 1.0 - mode.tail_mass;
    std::vector<double> next;
    next.reserve(probs.size() * mode.probabilities.size());
    for (double a : probs) {
      for (double b : mode.probabilities) next.push_back(a * b);
    }
    probs = std::move(next);
  }
  std::sort(probs.begin(), probs.end(), std::greater<double>());
  return {std::move(probs), 1.0 - kept_mass};
}

}  // namespace

MajorizationResult majorizes(const std::vector<double>& a,
                             const std::vector<double>& b, int truncation,
                             double eps) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument("majorizes: spectra must be same nonzero size");
  }
  std::vector<double> a_cl(a.size()), b_cl(b.size());
  std::transform(a.begin(), a.end(), a_cl.begin(), clamp_nu);
  std::transform(b.begin(), b.end(), b_cl.begin(), clamp_nu);

  auto [spec_a, tail_a] = joint_spectrum(a_cl, truncation);
  auto [spec_b, tail_b] = joint_spectrum(b_cl, truncation);
  const double tail = std::max(tail_a, tail_b);
  if (tail >= eps) {
    throw TruncationError("majorizes: truncation too small, tail mass " +
                          std::to_string(tail));
  }

  MajorizationResult result;
  result.tail_bound = tail;
  double sum_a = 0.0, sum_b = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  const size_t len = std::max(spec_a.size(), spec_b.size());
  for (size_t r = 0; r < len; ++r) {
    if (r < spec_a.size()) sum_a += spec_a[r];
    if (r < spec_b.size()) sum_b += spec_b[r];
    min_margin = std::min(min_margin, sum_a - sum_b);
  }
  result.min_margin = min_margin;
  // Box truncation can depress the computed partial sums of either side by
  // up to the tail mass, and summing the box accumulates rounding noise, so
  // margins within that slack of zero still certify the true
  // (infinite-spectrum) inequalities.
  const double slack = tail + 1e-12;
  if (min_margin >= -slack) {
    result.verdict = MajorizationVerdict::kHolds;
  } else if (min_margin >= -eps) {
    result.verdict = MajorizationVerdict::kInconclusiveWithinEps;
  } else {
    result.verdict = MajorizationVerdict::kFails;
  }
  return result;
}

PureDecomposition pure_state_decomposition(const CovarianceMatrix& gamma) {
  check_state(gamma);
  const int n = gamma.n;
  const WilliamsonResult w = williamson(gamma);
  const Mat sig = symplectic_form(n);
  const Mat t = -sig * w.s.transpose() * sig;  // symplectic inverse of w.s
  Mat d_minus_one = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    d_minus_one(2 * j, 2 * j) = w.spectrum[j] - 1.0;
    d_minus_one(2 * j + 1, 2 * j + 1) = w.spectrum[j] - 1.0;
  }
  PureDecomposition decomp;
  decomp.gamma_p = CovarianceMatrix(n, t * t.transpose());
  decomp.v = t * d_minus_one * t.transpose();
  return decomp;
}

}  // namespace gauss
