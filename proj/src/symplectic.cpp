#include "gauss/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gauss {

namespace {

// Single-mode 2x2 pieces the generator basis is assembled from.
Mat sigma2() {
  Mat m(2, 2);
  m << 0, 1, -1, 0;
  return m;
}

Mat beta2() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat delta2() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat embed_one_mode(int n, int mode, const Mat& block) {
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.block<2, 2>(2 * mode, 2 * mode) = block;
  return m;
}

// Off-diagonal coupling of modes i<j: block in (i,j) slot, `lower` in (j,i).
Mat embed_two_mode(int n, int i, int j, const Mat& upper, const Mat& lower) {
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.block<2, 2>(2 * i, 2 * j) = upper;
  m.block<2, 2>(2 * j, 2 * i) = lower;
  return m;
}

}  // namespace

Mat symplectic_form(int n) {
  if (n < 1) throw std::invalid_argument("symplectic_form: n must be >= 1");
  Mat m = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m(2 * i, 2 * i + 1) = 1.0;
    m(2 * i + 1, 2 * i) = -1.0;
  }
  return m;
}

bool is_symplectic(const Mat& s, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) return false;
  const int n = static_cast<int>(s.rows()) / 2;
  const Mat sig = symplectic_form(n);
  return (s.transpose() * sig * s - sig).cwiseAbs().maxCoeff() <= tol;
}

CovarianceMatrix CovarianceMatrix::vacuum(int n) {
  if (n < 1) throw std::invalid_argument("vacuum: n must be >= 1");
  return CovarianceMatrix(n, Mat::Identity(2 * n, 2 * n));
}

void check_state(const CovarianceMatrix& gamma, double tol) {
  if (gamma.n < 1 || gamma.matrix.rows() != 2 * gamma.n ||
      gamma.matrix.cols() != 2 * gamma.n) {
    throw std::invalid_argument("covariance matrix: bad shape");
  }
  if (!is_symmetric(gamma.matrix, tol)) {
    throw std::invalid_argument("covariance matrix: not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(gamma.matrix,
                                        Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("covariance matrix: not positive definite");
  }
  const auto nu = symplectic_eigenvalues(gamma);
  if (nu.back() < 1.0 - tol) {
    throw std::invalid_argument(
        "covariance matrix: uncertainty relation violated (nu_min = " +
        std::to_string(nu.back()) + ")");
  }
}

bool is_valid_state(const CovarianceMatrix& gamma, double tol) {
  try {
    check_state(gamma, tol);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

GeneratorBasis generator_basis(int n) {
  if (n < 1) throw std::invalid_argument("generator_basis: n must be >= 1");
  GeneratorBasis basis;
  basis.n = n;

  // Compact block: per-mode rotations, then two-mode passive couplings.
  for (int i = 0; i < n; ++i) {
    basis.generators.push_back(embed_one_mode(n, i, sigma2()));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      basis.generators.push_back(
          embed_two_mode(n, i, j, sigma2(), sigma2()));
      basis.generators.push_back(embed_two_mode(
          n, i, j, -Mat::Identity(2, 2), Mat::Identity(2, 2)));
    }
  }
  const int compact = static_cast<int>(basis.generators.size());

  // Non-compact block: per-mode squeezings, then two-mode active couplings.
  for (int i = 0; i < n; ++i) {
    basis.generators.push_back(embed_one_mode(n, i, delta2()));
    basis.generators.push_back(embed_one_mode(n, i, beta2()));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      basis.generators.push_back(embed_two_mode(n, i, j, delta2(), delta2()));
      basis.generators.push_back(embed_two_mode(n, i, j, beta2(), beta2()));
    }
  }

  basis.compact_flags.assign(basis.generators.size(), false);
  std::fill(basis.compact_flags.begin(), basis.compact_flags.begin() + compact,
            true);
  return basis;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  if (!is_symmetric(gamma.matrix)) {
    throw std::invalid_argument("symplectic_eigenvalues: not symmetric");
  }
  const int n = gamma.n;
  const Mat root = sqrtm_spd(gamma.matrix);  // rejects non-PD input
  const Mat a = root * symplectic_form(n) * root;  // antisymmetric
  // a^T a is symmetric PSD with eigenvalues nu_i^2, each doubled.
  Eigen::SelfAdjointEigenSolver<Mat> es(a.transpose() * a,
                                        Eigen::EigenvaluesOnly);
  Vec sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::vector<double> all(sq.data(), sq.data() + sq.size());
  std::sort(all.begin(), all.end(), std::greater<double>());
  std::vector<double> nu(n);
  for (int i = 0; i < n; ++i) {
    nu[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
  }
  return nu;
}

WilliamsonResult williamson(const CovarianceMatrix& gamma) {
  if (!is_symmetric(gamma.matrix)) {
    throw std::invalid_argument("williamson: not symmetric");
  }
  const int n = gamma.n;
  const Mat gamma_inv_root = inv_sqrtm_spd(gamma.matrix);
  const Mat m = gamma_inv_root * symplectic_form(n) * gamma_inv_root;

  // m is antisymmetric and invertible, so its real Schur form is block
  // diagonal with 2x2 blocks [[0, mu],[-mu, 0]], mu = 1/nu.
  Eigen::RealSchur<Mat> schur(m);
  Mat o = schur.matrixU();
  Mat t = schur.matrixT();

  std::vector<double> nu(n);
  for (int j = 0; j < n; ++j) {
    double mu = t(2 * j, 2 * j + 1);
    if (mu < 0.0) {
      o.col(2 * j).swap(o.col(2 * j + 1));
      mu = -mu;
    }
    if (mu <= 0.0) {
      throw std::invalid_argument("williamson: singular symplectic spectrum");
    }
    nu[j] = 1.0 / mu;
  }

  // Decreasing nu, ties by first occurrence.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a_, int b_) { return nu[a_] > nu[b_]; });
  Mat o_sorted(2 * n, 2 * n);
  std::vector<double> nu_sorted(n);
  for (int j = 0; j < n; ++j) {
    o_sorted.col(2 * j) = o.col(2 * order[j]);
    o_sorted.col(2 * j + 1) = o.col(2 * order[j] + 1);
    nu_sorted[j] = nu[order[j]];
  }
  o = o_sorted;

  // Rotation freedom within each mode plane; fix it so that an input already
  // in Williamson form maps to s = identity.
  for (int j = 0; j < n; ++j) {
    const double a = o(2 * j + 1, 2 * j);
    const double b = o(2 * j + 1, 2 * j + 1);
    const double r = std::hypot(a, b);
    if (r > 1e-12) {
      const double c = b / r;
      const double s = -a / r;
      const Vec c1 = o.col(2 * j);
      const Vec c2 = o.col(2 * j + 1);
      o.col(2 * j) = c * c1 + s * c2;
      o.col(2 * j + 1) = -s * c1 + c * c2;
    }
    if (o(2 * j, 2 * j) < 0.0) {
      o.col(2 * j) = -o.col(2 * j);
      o.col(2 * j + 1) = -o.col(2 * j + 1);
    }
  }

  Mat d_root = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    d_root(2 * j, 2 * j) = std::sqrt(nu_sorted[j]);
    d_root(2 * j + 1, 2 * j + 1) = std::sqrt(nu_sorted[j]);
  }

  WilliamsonResult result;
  result.s = d_root * o.transpose() * gamma_inv_root;
  result.spectrum = std::move(nu_sorted);
  return result;
}

namespace {

Mat polar_orthogonalize(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

EulerResult euler_decompose(const Mat& s) {
  if (!is_symplectic(s)) {
    throw std::invalid_argument("euler_decompose: input is not symplectic");
  }
  const int n = static_cast<int>(s.rows()) / 2;
  const Mat sig = symplectic_form(n);
  const Mat p = s.transpose() * s;  // symmetric positive definite symplectic

  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  const Vec lambda = es.eigenvalues();
  const Mat q = es.eigenvectors();

  // Log-eigenvalues come in +/- pairs; one symplectic pair (u, -sigma u) per
  // positive exponent, plus a paired basis of the near-unit subspace.
  constexpr double kUnitThresh = 1e-11;
  std::vector<std::pair<double, Vec>> pairs;  // (exponent a, vector u)
  std::vector<Vec> unit_pool;
  for (int k = 0; k < 2 * n; ++k) {
    const double a = 0.5 * std::log(lambda(k));
    if (a > kUnitThresh) {
      Vec u = q.col(k);
      int imax;
      u.cwiseAbs().maxCoeff(&imax);
      if (u(imax) < 0.0) u = -u;
      pairs.emplace_back(a, u);
    } else if (std::abs(a) <= kUnitThresh) {
      unit_pool.push_back(q.col(k));
    }
  }

  while (!unit_pool.empty()) {
    Vec u = unit_pool.front();
    u.normalize();
    const Vec w = -sig * u;
    // Rayleigh quotient recovers an exponent below the grouping threshold.
    const double a = 0.5 * std::log(u.dot(p * u));
    pairs.emplace_back(a, u);
    if (unit_pool.size() == 1) break;
    Mat rest(2 * n, static_cast<int>(unit_pool.size()) - 1);
    for (size_t k = 1; k < unit_pool.size(); ++k) {
      Vec v = unit_pool[k];
      v -= u.dot(v) * u + w.dot(v) * w;
      rest.col(static_cast<int>(k) - 1) = v;
    }
    Eigen::JacobiSVD<Mat> svd(rest, Eigen::ComputeThinU);
    unit_pool.clear();
    for (int k = 0; k < svd.singularValues().size(); ++k) {
      if (svd.singularValues()(k) > 0.5) unit_pool.push_back(svd.matrixU().col(k));
    }
  }

  if (static_cast<int>(pairs.size()) != n) {
    throw std::runtime_error("euler_decompose: symplectic pairing failed");
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a_, const auto& b_) {
                     return a_.first > b_.first;
                   });

  Mat v(2 * n, 2 * n);
  Mat z = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const double zj = std::exp(pairs[j].first);
    v.col(2 * j) = pairs[j].second;
    v.col(2 * j + 1) = -sig * pairs[j].second;
    z(2 * j, 2 * j) = zj;
    z(2 * j + 1, 2 * j + 1) = 1.0 / zj;
  }

  EulerResult result;
  result.z = z;
  result.o_right = polar_orthogonalize(v.transpose());
  result.o_left = polar_orthogonalize(s * v * z.inverse());
  return result;
}

double block_trace(const Mat& p, int j) {
  if (p.rows() != p.cols() || p.rows() % 2 != 0) {
    throw std::invalid_argument("block_trace: matrix must be 2n x 2n");
  }
  const int n = static_cast<int>(p.rows()) / 2;
  if (j < 1 || j > n) {
    throw std::out_of_range("block_trace: mode index out of range");
  }
  return p(2 * j - 2, 2 * j - 2) + p(2 * j - 1, 2 * j - 1);
}

std::vector<double> symplectic_eigenvalue_derivative(
    const CovarianceMatrix& gamma_w, const Mat& p) {
  const int n = gamma_w.n;
  if (p.rows() != 2 * n || p.cols() != 2 * n || !is_symmetric(p)) {
    throw std::invalid_argument(
        "symplectic_eigenvalue_derivative: perturbation must be symmetric "
        "2n x 2n");
  }
  // Require Williamson form with distinct symplectic eigenvalues.
  std::vector<double> nu(n);
  for (int j = 0; j < n; ++j) {
    nu[j] = gamma_w.matrix(2 * j, 2 * j);
  }
  Mat w_form = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    w_form(2 * j, 2 * j) = nu[j];
    w_form(2 * j + 1, 2 * j + 1) = nu[j];
  }
  if ((gamma_w.matrix - w_form).cwiseAbs().maxCoeff() > kValidityTol) {
    throw std::invalid_argument(
        "symplectic_eigenvalue_derivative: matrix is not in Williamson form");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(nu[i] - nu[j]) < kDegeneracyTol) {
        throw DegenerateSpectrumError(
            "symplectic_eigenvalue_derivative: degenerate spectrum");
      }
    }
  }
  std::vector<double> deriv(n);
  for (int j = 1; j <= n; ++j) {
    deriv[j - 1] = 0.5 * block_trace(p, j);
  }
  return deriv;
}

}  // namespace gauss
