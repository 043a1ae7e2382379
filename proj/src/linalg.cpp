#include "gauss/linalg.hpp"

#include <cmath>

namespace gauss {

bool is_symmetric(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

Mat matrix_exp(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exp: matrix must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("matrix_exp: non-finite entries");
  }
  const Eigen::Index n = a.rows();

  // Scale so the norm is small, sum the Taylor series to machine
  // precision, then square back.
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Mat as = a / std::ldexp(1.0, squarings);

  Mat term = Mat::Identity(n, n);
  Mat result = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * as) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17 * result.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) {
    result = result * result;
  }
  return result;
}

Mat matrix_exp_frechet(const Mat& a, const Mat& e) {
  const Eigen::Index n = a.rows();
  Mat aug = Mat::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = a;
  aug.topRightCorner(n, n) = e;
  aug.bottomRightCorner(n, n) = a;
  return matrix_exp(aug).topRightCorner(n, n);
}

Mat sqrtm_spd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("sqrtm_spd: matrix is not positive definite");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

Mat inv_sqrtm_spd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument(
        "inv_sqrtm_spd: matrix is not positive definite");
  }
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace gauss
