#pragma once

#include <vector>

#include "gauss/linalg.hpp"

namespace gauss {

// Direct number-basis sums over the thermal spectrum. These deliberately
// avoid the closed forms they are used to verify: each term is accumulated
// literally; geometric expressions appear only in tail bounds.

struct OracleValue {
  double value = 0.0;
  double error_bound = 0.0;
  std::vector<int> truncations;  // K used per mode
};

// tr rho^p of the thermal state with symplectic eigenvalues nus, as a
// truncated sum of (prod_i lambda_{k_i})^p.
OracleValue oracle_trace_power(const std::vector<double>& nus, double p,
                               double tail_tol);

// -sum lambda ln lambda over the truncation box.
OracleValue oracle_entropy(const std::vector<double>& nus, double tail_tol);

}  // namespace gauss
