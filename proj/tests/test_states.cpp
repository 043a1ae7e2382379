#include <cmath>
#include <random>

#include <doctest.h>

#include "gauss/fock_oracle.hpp"
#include "gauss/states.hpp"
#include "test_util.hpp"

using namespace gauss;

TEST_CASE("pure state parametrization") {
  const auto vac = pure_cm_from_params(PureStateParams::vacuum(2));
  CHECK((vac.matrix - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  PureStateParams sq = PureStateParams::vacuum(1);
  sq.z(0) = 4.0;
  const auto g = pure_cm_from_params(sq);
  CHECK(g.matrix(0, 0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(g.matrix(1, 1) == doctest::Approx(0.25).epsilon(1e-13));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto params = testutil::random_pure_params(2, rng);
    const auto gamma = pure_cm_from_params(params);
    CHECK(gamma.matrix.determinant() == doctest::Approx(1.0).epsilon(1e-9));
    for (double nu : symplectic_eigenvalues(gamma)) {
      CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  PureStateParams bad = PureStateParams::vacuum(1);
  bad.z(0) = -1.0;
  CHECK_THROWS_AS(pure_cm_from_params(bad), std::invalid_argument);
}

TEST_CASE("perturbed cm preserves the symplectic spectrum") {
  std::mt19937_64 rng(32);
  const auto gamma = testutil::random_cm(2, rng);
  const GeneratorBasis basis = generator_basis(2);

  const auto same = perturbed_cm(gamma, Vec::Zero(basis.count()));
  CHECK((same.matrix - gamma.matrix).cwiseAbs().maxCoeff() < 1e-14);

  std::normal_distribution<double> normal(0.0, 0.2);
  const auto before = symplectic_eigenvalues(gamma);
  for (int trial = 0; trial < 10; ++trial) {
    Vec k(basis.count());
    for (int i = 0; i < k.size(); ++i) k(i) = normal(rng);
    const auto after = symplectic_eigenvalues(perturbed_cm(gamma, k));
    for (size_t i = 0; i < before.size(); ++i) {
      CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-9));
    }
  }

  // pure stays pure
  const auto pure = pure_cm_from_params(testutil::random_pure_params(2, rng));
  Vec k(basis.count());
  for (int i = 0; i < k.size(); ++i) k(i) = normal(rng);
  for (double nu : symplectic_eigenvalues(perturbed_cm(pure, k))) {
    CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(perturbed_cm(gamma, Vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("f_p values") {
  for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    CHECK(f_p(1.0, p) == doctest::Approx(std::pow(2.0, p)).epsilon(1e-13));
  }
  CHECK(f_p(3.0, 2.0) == doctest::Approx(12.0).epsilon(1e-13));
  for (double x : {1.0, 2.5, 7.0}) {
    CHECK(f_p(x, 2.0) == doctest::Approx(4.0 * x).epsilon(1e-13));
  }
  CHECK_THROWS_AS(f_p(0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(f_p(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("trace power closed forms") {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto pv = trace_power(CovarianceMatrix::vacuum(2), p);
    CHECK(pv.trace_power == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pv.renyi == doctest::Approx(0.0).epsilon(1e-12));
  }

  Mat th(2, 2);
  th.setZero();
  th.diagonal() << 3, 3;
  CHECK(trace_power(CovarianceMatrix(1, th), 2.0).trace_power ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  Mat two(4, 4);
  two.setZero();
  two.diagonal() << 2, 2, 3, 3;
  const CovarianceMatrix g2(2, two);
  CHECK(trace_power(g2, 2.0).trace_power ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(trace_power(g2, 2.0).trace_power ==
        doctest::Approx(1.0 / std::sqrt(two.determinant())).epsilon(1e-10));

  Mat bad = 0.2 * Mat::Identity(2, 2);
  CHECK_THROWS_AS(trace_power(CovarianceMatrix(1, bad), 2.0),
                  std::invalid_argument);
}

TEST_CASE("trace power properties") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto gamma = testutil::random_cm(n, rng);
    const double p = 1.2 + (trial % 4);
    const auto pv = trace_power(gamma, p);
    CHECK(pv.trace_power > 0.0);
    CHECK(pv.trace_power <= 1.0 + 1e-12);
    CHECK(pv.renyi ==
          doctest::Approx(std::log(pv.trace_power) / (1.0 - p)).epsilon(1e-10));

    // symplectic invariance
    const Mat s = testutil::random_symplectic(n, rng);
    Mat g2 = s.transpose() * gamma.matrix * s;
    g2 = 0.5 * (g2 + g2.transpose());
    CHECK(trace_power(CovarianceMatrix(n, g2), p).trace_power ==
          doctest::Approx(pv.trace_power).epsilon(1e-9));
  }

  // multiplicative over direct sums
  std::mt19937_64 rng2(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ga = testutil::random_cm(1, rng2);
    const auto gb = testutil::random_cm(2, rng2);
    Mat sum = Mat::Zero(6, 6);
    sum.block<2, 2>(0, 0) = ga.matrix;
    sum.block<4, 4>(2, 2) = gb.matrix;
    const double p = 2.5;
    CHECK(trace_power(CovarianceMatrix(3, sum), p).trace_power ==
          doctest::Approx(trace_power(ga, p).trace_power *
                          trace_power(gb, p).trace_power)
              .epsilon(1e-10));
  }
}

TEST_CASE("trace power agrees with the number-basis oracle") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto gamma = testutil::random_cm(n, rng);
    const double p = 1.3 + 0.7 * (trial % 3);
    const auto nus = symplectic_eigenvalues(gamma);
    const auto oracle = oracle_trace_power(nus, p, 1e-13);
    CHECK(std::abs(trace_power(gamma, p).trace_power - oracle.value) <
          std::max(1e-10, 10.0 * oracle.error_bound));
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(CovarianceMatrix::vacuum(2)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK(von_neumann_entropy_from_spectrum({3.0}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(von_neumann_entropy_from_spectrum({3.0}) ==
        doctest::Approx(oracle_entropy({3.0}, 1e-12).value).epsilon(1e-9));

  // additive over modes
  CHECK(von_neumann_entropy_from_spectrum({3.0, 1.7}) ==
        doctest::Approx(von_neumann_entropy_from_spectrum({3.0}) +
                        von_neumann_entropy_from_spectrum({1.7}))
            .epsilon(1e-12));
}

TEST_CASE("thermal spectrum") {
  const auto pure = thermal_spectrum(1.0, 5);
  CHECK(pure.probabilities[0] == 1.0);
  CHECK(pure.probabilities[3] == 0.0);
  CHECK(pure.tail_mass == 0.0);

  const auto t3 = thermal_spectrum(3.0, 20);
  for (int k = 0; k <= 20; ++k) {
    CHECK(t3.probabilities[k] ==
          doctest::Approx(std::pow(0.5, k + 1)).epsilon(1e-13));
  }
  double total = t3.tail_mass;
  for (double lam : t3.probabilities) total += lam;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(thermal_spectrum(0.5, 5), std::invalid_argument);
}

TEST_CASE("majorization verdicts") {
  const auto eq = majorizes({2.0, 1.5}, {2.0, 1.5}, 60, 1e-10);
  CHECK(eq.verdict != MajorizationVerdict::kFails);
  CHECK(eq.min_margin >= -1e-12);

  const auto pure_vs_thermal = majorizes({1.0}, {3.0}, 80, 1e-10);
  CHECK(pure_vs_thermal.verdict == MajorizationVerdict::kHolds);

  // thermal (3) cannot majorize the pure state
  const auto reverse = majorizes({3.0}, {1.0}, 80, 1e-10);
  CHECK(reverse.verdict == MajorizationVerdict::kFails);

  // optimal vs squeezed output of the doubled classical-noise channel
  const double nu_sq = std::sqrt(4.5);
  const auto prop1 = majorizes({2.0, 2.0}, {nu_sq, nu_sq}, 120, 1e-10);
  CHECK(prop1.verdict == MajorizationVerdict::kHolds);
  CHECK(prop1.min_margin >= -1e-12);

  // truncation too small for the requested tail tolerance
  CHECK_THROWS_AS(majorizes({40.0}, {40.0}, 3, 1e-10), TruncationError);
}

TEST_CASE("majorization implies trace-power dominance") {
  // Schur-convexity consequence on the tested pairs.
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs =
      {{{1.0}, {3.0}},
       {{2.0, 2.0}, {std::sqrt(4.5), std::sqrt(4.5)}},
       {{1.5, 1.2}, {2.0, 1.4}}};
  for (const auto& [a, b] : pairs) {
    const auto res = majorizes(a, b, 200, 1e-10);
    REQUIRE(res.verdict == MajorizationVerdict::kHolds);
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(purity_from_spectrum(a, p).trace_power >=
            purity_from_spectrum(b, p).trace_power - 1e-12);
    }
  }
}

TEST_CASE("pure state decomposition") {
  std::mt19937_64 rng(36);
  const auto pure = pure_cm_from_params(testutil::random_pure_params(2, rng));
  const auto dp = pure_state_decomposition(pure);
  CHECK(dp.v.cwiseAbs().maxCoeff() < 1e-9);

  const auto d2 = pure_state_decomposition(
      CovarianceMatrix(1, 2.0 * Mat::Identity(2, 2)));
  CHECK((d2.gamma_p.matrix - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK((d2.v - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto gamma = testutil::random_cm(n, rng);
    const auto d = pure_state_decomposition(gamma);
    CHECK((d.gamma_p.matrix + d.v - gamma.matrix).cwiseAbs().maxCoeff() <
          1e-10);
    for (double nu : symplectic_eigenvalues(d.gamma_p)) {
      CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(d.v, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}
