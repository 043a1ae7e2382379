#include <cmath>
#include <random>

#include <doctest.h>

#include "gauss/channels.hpp"
#include "test_util.hpp"

using namespace gauss;

TEST_CASE("channel application") {
  std::mt19937_64 rng(41);
  const auto gamma = testutil::random_cm(2, rng);
  const auto id = GaussianChannel::identity(2);
  CHECK((apply(id, gamma).matrix - gamma.matrix).cwiseAbs().maxCoeff() <
        1e-14);

  // attenuation on vacuum is closed: vacuum maps to vacuum
  const auto att = atten_amp(0.5, 1);
  const auto out = apply(att, CovarianceMatrix::vacuum(1));
  CHECK((out.matrix - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  const auto noise = classical_noise(Mat::Identity(2, 2));
  const auto noisy = apply(noise, CovarianceMatrix::vacuum(1));
  CHECK((noisy.matrix - 2.0 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(symplectic_eigenvalues(noisy)[0] == doctest::Approx(2.0));

  CHECK_THROWS_AS(apply(att, gamma), std::invalid_argument);
}

TEST_CASE("complete positivity verdicts") {
  // boundary amplifier: det Y = (det X - 1)^2 exactly
  const GaussianChannel amp(2.0 * Mat::Identity(2, 2),
                            3.0 * Mat::Identity(2, 2), {1});
  const auto v = validate(amp);
  CHECK(v.valid);
  CHECK(v.det_check_applicable);
  CHECK(std::abs(v.det_margin) <= 1e-9);

  const GaussianChannel bad(Mat::Identity(2, 2), -0.1 * Mat::Identity(2, 2),
                            {1});
  CHECK_FALSE(validate(bad).valid);

  CHECK(validate(GaussianChannel::identity(2)).valid);
}

TEST_CASE("LMI and determinant CP checks agree") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal(0.0, 1.0);
  int disagreements = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Mat x(2, 2), y(2, 2);
    x << normal(rng), normal(rng), normal(rng), normal(rng);
    const double a = normal(rng), b = normal(rng), c = normal(rng);
    y << a, c, c, b;
    const GaussianChannel ch(x, y, {1});
    const auto v = validate(ch);
    REQUIRE(v.det_check_applicable);
    // skip knife-edge cases where either margin sits at the tolerance
    if (std::abs(v.lmi_margin) < 1e-7 || std::abs(v.det_margin) < 1e-7) {
      continue;
    }
    if (v.valid != v.det_check_valid) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("pure channel condition") {
  const GaussianChannel amp(2.0 * Mat::Identity(2, 2),
                            3.0 * Mat::Identity(2, 2), {1});
  CHECK(is_pure_channel(amp));
  CHECK(is_pure_channel(GaussianChannel::identity(2)));
  CHECK_FALSE(is_pure_channel(classical_noise(Mat::Identity(2, 2))));
}

TEST_CASE("named channels") {
  const auto unit = atten_amp(1.0, 2);
  CHECK((unit.x - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(unit.y.cwiseAbs().maxCoeff() < 1e-14);

  std::mt19937_64 rng(43);
  const auto bath = testutil::random_cm(1, rng);
  const auto frozen = thermal_bath(1.0, 0.0, bath);
  CHECK((frozen.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(frozen.y.cwiseAbs().maxCoeff() < 1e-14);

  const auto forever = thermal_bath(1.0, 1e9, bath);
  const auto gamma = testutil::random_cm(1, rng);
  CHECK((apply(forever, gamma).matrix - bath.matrix).cwiseAbs().maxCoeff() <
        1e-6);

  CHECK(validate(atten_amp(0.3, 1)).valid);
  CHECK(validate(atten_amp(2.5, 1)).valid);
  CHECK(validate(forever).valid);
  CHECK_THROWS_AS(atten_amp(-1.0, 1), std::invalid_argument);
}

TEST_CASE("tensor products") {
  const auto a = classical_noise(Mat::Identity(2, 2));
  const auto b = atten_amp(0.5, 1);
  const auto t = tensor({a, b});
  CHECK(t.n == 2);
  CHECK(t.factor_count() == 2);
  CHECK((t.factor(0).x - a.x).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((t.factor(1).y - b.y).cwiseAbs().maxCoeff() < 1e-14);

  const auto single = tensor({a});
  CHECK((single.x - a.x).cwiseAbs().maxCoeff() < 1e-14);

  // validity factorizes
  const GaussianChannel bad(Mat::Identity(2, 2), -0.1 * Mat::Identity(2, 2),
                            {1});
  CHECK(validate(t).valid);
  CHECK_FALSE(validate(tensor({a, bad})).valid);

  CHECK_THROWS_AS(tensor({}), std::invalid_argument);
}

TEST_CASE("apply preserves state validity") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> unif(0.3, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<GaussianChannel> factors;
    for (int i = 0; i < n; ++i) {
      const double eps = unif(rng);
      factors.push_back(std::abs(eps - 1.0) < 0.05
                            ? classical_noise(unif(rng) * Mat::Identity(2, 2))
                            : atten_amp(eps, 1));
    }
    const auto ch = tensor(factors);
    REQUIRE(validate(ch).valid);
    const auto out = apply(ch, testutil::random_cm(n, rng));
    CHECK(is_valid_state(out, 1e-8));
  }
}

TEST_CASE("standard form reduction") {
  Mat x(2, 2), y(2, 2);
  x.setZero();
  x.diagonal() << 1, 4;
  y.setZero();
  y.diagonal() << 8, 2;
  const GaussianChannel ch(x, y, {1});
  const auto cert = reduce_standard_form(ch);
  CHECK((cert.reduced.x - 2.0 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-9);
  CHECK((cert.reduced.y - 4.0 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-9);
  CHECK_FALSE(cert.sign_flip_applied);
  for (const Mat& m : cert.pre) CHECK(is_symplectic(m, 1e-10));
  for (const Mat& m : cert.post) CHECK(is_symplectic(m, 1e-10));

  // already standard: unchanged
  const GaussianChannel std_ch(Mat::Identity(2, 2), 1.7 * Mat::Identity(2, 2),
                               {1});
  const auto cert2 = reduce_standard_form(std_ch);
  CHECK((cert2.reduced.x - std_ch.x).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((cert2.reduced.y - std_ch.y).cwiseAbs().maxCoeff() < 1e-9);

  // negative determinant is absorbed by time reversal
  Mat sz(2, 2);
  sz << 1, 0, 0, -1;
  const GaussianChannel flip(sz, Mat::Identity(2, 2), {1});
  const auto cert3 = reduce_standard_form(flip);
  CHECK(cert3.sign_flip_applied);
  CHECK((cert3.reduced.x - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);

  // hypothesis violations
  Mat zero_det(2, 2);
  zero_det << 1, 0, 0, 0;
  CHECK_THROWS_AS(
      reduce_standard_form(GaussianChannel(zero_det, Mat::Identity(2, 2), {1})),
      HypothesisError);
  Mat mixed_x = Mat::Zero(4, 4);
  mixed_x.block<2, 2>(0, 0) = Mat::Identity(2, 2);
  mixed_x.block<2, 2>(2, 2) = sz;
  CHECK_THROWS_AS(
      reduce_standard_form(
          GaussianChannel(mixed_x, 2.0 * Mat::Identity(4, 4), {1, 1})),
      HypothesisError);
}

TEST_CASE("reduction produces scalar factors on random channels") {
  std::mt19937_64 rng(45);
  std::normal_distribution<double> normal(0.0, 0.8);
  int done = 0;
  while (done < 30) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<GaussianChannel> factors;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      Mat x(2, 2);
      x << normal(rng), normal(rng), normal(rng), normal(rng);
      if (x.determinant() < 0.05) {
        ok = false;
        break;
      }
      Mat r(2, 2);
      r << normal(rng), normal(rng), normal(rng), normal(rng);
      Mat y = r * r.transpose() +
              (std::abs(x.determinant() - 1.0) + 0.1) * Mat::Identity(2, 2);
      factors.push_back(GaussianChannel(x, y, {1}));
      if (!validate(factors.back()).valid) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const auto cert = reduce_standard_form(tensor(factors));
    for (int i = 0; i < n; ++i) {
      const Mat xb = cert.reduced.x.block<2, 2>(2 * i, 2 * i);
      const Mat yb = cert.reduced.y.block<2, 2>(2 * i, 2 * i);
      CHECK((xb - xb(0, 0) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
            1e-9);
      CHECK((yb - yb(0, 0) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
            1e-9);
      CHECK(xb(0, 0) ==
            doctest::Approx(std::sqrt(std::abs(
                factors[i].x.determinant()))).epsilon(1e-9));
      CHECK(yb(0, 0) ==
            doctest::Approx(std::sqrt(factors[i].y.determinant()))
                .epsilon(1e-8));
    }
    CHECK(validate(cert.reduced).valid);
    ++done;
  }
}

TEST_CASE("channel JSON round trip") {
  const auto ch = tensor({classical_noise(Mat::Identity(2, 2)),
                          atten_amp(0.5, 1)});
  const auto parsed = channel_from_json(channel_to_json(ch));
  CHECK((parsed.x - ch.x).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((parsed.y - ch.y).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(parsed.mode_partition == ch.mode_partition);
  // a second round trip is exact
  CHECK(channel_to_json(parsed) == channel_to_json(ch));

  CHECK_THROWS_AS(channel_from_json("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(channel_from_json(R"({"factors": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      channel_from_json(
          R"({"factors": [{"kind": "attenuation", "eps": 2.0}]})"),
      std::invalid_argument);
}
