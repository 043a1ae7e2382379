#include "gauss/fock_oracle.hpp"

#include <cmath>

namespace gauss {

namespace {

constexpr int kMaxTruncation = 10000;

struct ModeSum {
  double sum = 0.0;
  double tail = 0.0;
  int truncation = 0;
};

// sum_{k<=K} lambda_k^p, K chosen so the p-power tail bound drops below tol.
ModeSum trace_power_mode(double nu, double p, double tol) {
  const double q = (nu - 1.0) / (nu + 1.0);
  const double lam0 = 2.0 / (nu + 1.0);
  ModeSum mode;
  if (q == 0.0) {
    mode.sum = 1.0;
    return mode;
  }
  const double qp = std::pow(q, p);
  double lam = lam0;
  double term = std::pow(lam0, p);
  for (int k = 0; k <= kMaxTruncation; ++k) {
    mode.sum += term;
    mode.truncation = k;
    // remaining terms are bounded by the geometric series term*qp/(1-qp)
    mode.tail = term * qp / (1.0 - qp);
    if (mode.tail < tol) return mode;
    lam *= q;
    term = std::pow(lam, p);
  }
  throw TruncationError("oracle_trace_power: tail tolerance unreachable");
}

ModeSum entropy_mode(double nu, double tol) {
  const double q = (nu - 1.0) / (nu + 1.0);
  const double lam0 = 2.0 / (nu + 1.0);
  ModeSum mode;
  if (q == 0.0) return mode;  // pure mode contributes zero entropy
  const double a = -std::log(lam0);
  const double b = -std::log(q);
  double lam = lam0;
  for (int k = 0; k <= kMaxTruncation; ++k) {
    mode.sum += -lam * std::log(lam);
    mode.truncation = k;
    // -sum_{j>k} lambda_j ln lambda_j = lam0 sum_{j>k} q^j (a + j b)
    const int m = k + 1;
    const double qm = std::pow(q, m);
    mode.tail = lam0 * (a * qm / (1.0 - q) +
                        b * qm * (m - (m - 1.0) * q) /
                            ((1.0 - q) * (1.0 - q)));
    if (mode.tail < tol) return mode;
    lam *= q;
  }
  throw TruncationError("oracle_entropy: tail tolerance unreachable");
}

void check_args(const std::vector<double>& nus, double tail_tol) {
  if (nus.empty()) throw std::invalid_argument("oracle: empty spectrum");
  if (!(tail_tol > 0.0)) {
    throw std::invalid_argument("oracle: tail_tol must be > 0");
  }
  for (double nu : nus) {
    if (!(nu >= 1.0 - kValidityTol)) {
      throw std::invalid_argument("oracle: nu must be >= 1");
    }
  }
}

}  // namespace

OracleValue oracle_trace_power(const std::vector<double>& nus, double p,
                               double tail_tol) {
  check_args(nus, tail_tol);
  if (!(p > 1.0)) throw std::invalid_argument("oracle: p must be > 1");
  const double per_mode_tol = tail_tol / (2.0 * static_cast<double>(nus.size()));
  OracleValue result;
  result.value = 1.0;
  std::vector<ModeSum> modes;
  for (double nu : nus) {
    modes.push_back(trace_power_mode(std::max(nu, 1.0), p, per_mode_tol));
    result.value *= modes.back().sum;
    result.truncations.push_back(modes.back().truncation);
  }
  // Box value lies between prod(sum) and prod(sum + tail).
  double upper = 1.0;
  for (const auto& mode : modes) upper *= mode.sum + mode.tail;
  result.error_bound = upper - result.value;
  return result;
}

OracleValue oracle_entropy(const std::vector<double>& nus, double tail_tol) {
  check_args(nus, tail_tol);
  const double per_mode_tol = tail_tol / (2.0 * static_cast<double>(nus.size()));
  OracleValue result;
  for (double nu : nus) {
    const ModeSum mode = entropy_mode(std::max(nu, 1.0), per_mode_tol);
    result.value += mode.sum;
    result.error_bound += mode.tail;
    result.truncations.push_back(mode.truncation);
  }
  return result;
}

}  // namespace gauss
