#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gauss {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Single global tolerance for validity checks (positivity, symmetry,
// symplecticity of inputs).
inline constexpr double kValidityTol = 1e-9;

// Two symplectic eigenvalues closer than this are treated as degenerate
// by first-order perturbation formulas.
inline constexpr double kDegeneracyTol = 1e-6;

struct DegenerateSpectrumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_symmetric(const Mat& m, double tol = kValidityTol);

// exp(A) by scaling and squaring; relative accuracy ~1e-15 on the small
// dense matrices used here.
Mat matrix_exp(const Mat& a);

// Directional (Frechet) derivative of the matrix exponential at a along e,
// via the block-triangular augmentation exp([[a,e],[0,a]]).
Mat matrix_exp_frechet(const Mat& a, const Mat& e);

// Principal square root of a symmetric positive definite matrix.
Mat sqrtm_spd(const Mat& m);

// Inverse square root of a symmetric positive definite matrix.
Mat inv_sqrtm_spd(const Mat& m);

}  // namespace gauss
