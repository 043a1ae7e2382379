#include <cmath>

#include <doctest.h>

#include "gauss/fock_oracle.hpp"
#include "gauss/states.hpp"

using namespace gauss;

TEST_CASE("oracle trace power on known spectra") {
  const auto single = oracle_trace_power({3.0}, 2.0, 1e-13);
  CHECK(std::abs(single.value - 1.0 / 3.0) < 1e-12);
  CHECK(single.error_bound < 1e-12);
  CHECK(single.truncations[0] <= 60);

  const auto pure = oracle_trace_power({1.0, 1.0, 1.0}, 3.0, 1e-13);
  CHECK(pure.value == doctest::Approx(1.0).epsilon(1e-14));

  const auto prod = oracle_trace_power({2.0, 3.0}, 2.0, 1e-13);
  CHECK(std::abs(prod.value - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("oracle entropy on known spectra") {
  CHECK(oracle_entropy({1.0}, 1e-12).value == doctest::Approx(0.0));
  CHECK(std::abs(oracle_entropy({3.0}, 1e-11).value - std::log(4.0)) < 1e-9);

  // additive over modes
  const double joint = oracle_entropy({3.0, 1.7}, 1e-12).value;
  const double split = oracle_entropy({3.0}, 1e-12).value +
                       oracle_entropy({1.7}, 1e-12).value;
  CHECK(std::abs(joint - split) < 1e-9);
}

TEST_CASE("oracle agrees with the closed form on the verification grid") {
  const double grid_nu[] = {1.0, 1.1, 1.5, 3.0, 10.0};
  const double grid_p[] = {1.2, 1.5, 2.0, 3.0, 5.0};
  for (int n = 1; n <= 3; ++n) {
    for (double nu : grid_nu) {
      for (double p : grid_p) {
        const std::vector<double> nus(n, nu);
        const auto o = oracle_trace_power(nus, p, 1e-12);
        const double closed = purity_from_spectrum(nus, p).trace_power;
        CHECK(std::abs(closed - o.value) <
              std::max(1e-10, 10.0 * o.error_bound));
      }
    }
  }
}

TEST_CASE("oracle is monotone in each eigenvalue") {
  for (double p : {1.5, 2.0, 3.0}) {
    double prev = 2.0;
    for (double nu : {1.0, 1.2, 1.7, 2.5, 4.0}) {
      const double v = oracle_trace_power({nu, 1.5}, p, 1e-12).value;
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("oracle rejects unreachable tolerances") {
  // nu large and p near 1: the needed truncation exceeds the per-mode cap
  CHECK_THROWS_AS(oracle_trace_power({2000.0}, 1.01, 1e-12), TruncationError);
  CHECK_THROWS_AS(oracle_trace_power({3.0}, 2.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(oracle_trace_power({0.5}, 2.0, 1e-10),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_trace_power({3.0}, 0.9, 1e-10),
                  std::invalid_argument);
}
