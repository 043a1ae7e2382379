#include "gauss/channels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gauss {

namespace {

using nlohmann::json;

Mat sigma_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

void check_block_diagonal(const Mat& m, const std::vector<int>& partition,
                          const char* name) {
  int offset = 0;
  for (int modes : partition) {
    const int lo = 2 * offset;
    const int hi = lo + 2 * modes;
    for (int r = lo; r < hi; ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if ((c < lo || c >= hi) && std::abs(m(r, c)) > kValidityTol) {
          throw std::invalid_argument(
              std::string(name) + " is not block diagonal per mode_partition");
        }
      }
    }
    offset += modes;
  }
}

}  // namespace

GaussianChannel::GaussianChannel(Mat x_, Mat y_, std::vector<int> partition)
    : x(std::move(x_)), y(std::move(y_)), mode_partition(std::move(partition)) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0 || x.rows() == 0 ||
      y.rows() != x.rows() || y.cols() != x.cols()) {
    throw std::invalid_argument("channel: X and Y must be equal-size 2n x 2n");
  }
  n = static_cast<int>(x.rows()) / 2;
  if (!is_symmetric(y)) {
    throw std::invalid_argument("channel: Y must be symmetric");
  }
  if (mode_partition.empty()) mode_partition = {n};
  int total = 0;
  for (int m : mode_partition) {
    if (m < 1) throw std::invalid_argument("channel: bad mode_partition entry");
    total += m;
  }
  if (total != n) {
    throw std::invalid_argument("channel: mode_partition does not sum to n");
  }
  check_block_diagonal(x, mode_partition, "X");
  check_block_diagonal(y, mode_partition, "Y");
}

GaussianChannel GaussianChannel::identity(int n) {
  return GaussianChannel(Mat::Identity(2 * n, 2 * n),
                         Mat::Zero(2 * n, 2 * n), {n});
}

int GaussianChannel::factor_offset(int i) const {
  int offset = 0;
  for (int k = 0; k < i; ++k) offset += mode_partition[k];
  return offset;
}

GaussianChannel GaussianChannel::factor(int i) const {
  const int modes = mode_partition[i];
  const int lo = 2 * factor_offset(i);
  return GaussianChannel(x.block(lo, lo, 2 * modes, 2 * modes),
                         y.block(lo, lo, 2 * modes, 2 * modes), {modes});
}

bool GaussianChannel::single_mode_factors() const {
  for (int m : mode_partition) {
    if (m != 1) return false;
  }
  return true;
}

CovarianceMatrix apply(const GaussianChannel& ch,
                       const CovarianceMatrix& gamma) {
  if (gamma.n != ch.n) {
    throw std::invalid_argument("apply: mode count mismatch");
  }
  check_state(gamma);
  Mat out = ch.x.transpose() * gamma.matrix * ch.x + ch.y;
  out = 0.5 * (out + out.transpose());
  return CovarianceMatrix(ch.n, std::move(out));
}

ChannelVerdict validate(const GaussianChannel& ch) {
  const Mat sig = symplectic_form(ch.n);
  Eigen::MatrixXcd h =
      ch.y.cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) *
          (sig - ch.x.transpose() * sig * ch.x).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  ChannelVerdict verdict;
  verdict.lmi_margin = es.eigenvalues().minCoeff();
  verdict.valid = verdict.lmi_margin >= -kValidityTol;

  if (ch.single_mode_factors()) {
    verdict.det_check_applicable = true;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ch.factor_count(); ++i) {
      const GaussianChannel f = ch.factor(i);
      Eigen::SelfAdjointEigenSolver<Mat> ey(f.y, Eigen::EigenvaluesOnly);
      const double y_min = ey.eigenvalues().minCoeff();
      const double det_x = f.x.determinant();
      const double gap = f.y.determinant() - (det_x - 1.0) * (det_x - 1.0);
      margin = std::min({margin, y_min, gap});
    }
    verdict.det_margin = margin;
    verdict.det_check_valid = margin >= -kValidityTol;
  }
  return verdict;
}

bool is_pure_channel(const GaussianChannel& ch, double tol) {
  const Mat sig = symplectic_form(ch.n);
  const Mat m = ch.x.transpose() * sig * ch.x - sig;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(ch.y);
  const Mat y_pinv = cod.pseudoInverse();
  const Mat rhs = -m * y_pinv * m;
  return (ch.y - rhs).cwiseAbs().maxCoeff() <= tol;
}

GaussianChannel classical_noise(const Mat& y) {
  if (y.rows() != y.cols() || y.rows() % 2 != 0 || y.rows() == 0 ||
      !is_symmetric(y)) {
    throw std::invalid_argument("classical_noise: Y must be symmetric 2n x 2n");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(y, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kValidityTol) {
    throw std::invalid_argument("classical_noise: Y must be PSD");
  }
  const int n = static_cast<int>(y.rows()) / 2;
  return GaussianChannel(Mat::Identity(2 * n, 2 * n), y, {n});
}

GaussianChannel atten_amp(double eps, int n) {
  if (!(eps > 0.0)) throw std::invalid_argument("atten_amp: eps must be > 0");
  if (n < 1) throw std::invalid_argument("atten_amp: n must be >= 1");
  std::vector<int> partition(n, 1);
  return GaussianChannel(eps * Mat::Identity(2 * n, 2 * n),
                         std::abs(1.0 - eps * eps) *
                             Mat::Identity(2 * n, 2 * n),
                         std::move(partition));
}

GaussianChannel thermal_bath(double rate, double time,
                             const CovarianceMatrix& bath) {
  if (rate < 0.0 || time < 0.0) {
    throw std::invalid_argument("thermal_bath: rate and time must be >= 0");
  }
  check_state(bath);
  const double decay = std::exp(-rate * time);
  return GaussianChannel(std::sqrt(decay) * Mat::Identity(2 * bath.n, 2 * bath.n),
                         (1.0 - decay) * bath.matrix, {bath.n});
}

GaussianChannel tensor(const std::vector<GaussianChannel>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("tensor: empty factor list");
  }
  int n = 0;
  std::vector<int> partition;
  for (const auto& f : factors) {
    n += f.n;
    partition.insert(partition.end(), f.mode_partition.begin(),
                     f.mode_partition.end());
  }
  Mat x = Mat::Zero(2 * n, 2 * n);
  Mat y = Mat::Zero(2 * n, 2 * n);
  int offset = 0;
  for (const auto& f : factors) {
    x.block(offset, offset, 2 * f.n, 2 * f.n) = f.x;
    y.block(offset, offset, 2 * f.n, 2 * f.n) = f.y;
    offset += 2 * f.n;
  }
  return GaussianChannel(std::move(x), std::move(y), std::move(partition));
}

ReductionCertificate reduce_standard_form(const GaussianChannel& ch) {
  if (!ch.single_mode_factors()) {
    throw HypothesisError(
        "reduce_standard_form: all factors must be single-mode");
  }
  const int n = ch.n;
  std::vector<double> dets(n);
  int sign = 0;
  for (int i = 0; i < n; ++i) {
    dets[i] = ch.x.block<2, 2>(2 * i, 2 * i).determinant();
    if (std::abs(dets[i]) < kValidityTol) {
      throw HypothesisError("reduce_standard_form: det X_i is zero");
    }
    const int s = dets[i] > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) {
      throw HypothesisError(
          "reduce_standard_form: determinants of X_i have mixed signs");
    }
  }

  ReductionCertificate cert;
  cert.sign_flip_applied = (sign < 0);

  Mat x_tilde = Mat::Zero(2 * n, 2 * n);
  Mat y_tilde = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    Mat xi = ch.x.block<2, 2>(2 * i, 2 * i);
    const Mat yi = ch.y.block<2, 2>(2 * i, 2 * i);
    if (cert.sign_flip_applied) xi = sigma_z() * xi;

    Mat b = Mat::Identity(2, 2);
    if (yi.cwiseAbs().maxCoeff() > kValidityTol) {
      if (yi.determinant() < kValidityTol) {
        throw HypothesisError(
            "reduce_standard_form: singular nonzero Y_i is unsupported");
      }
      b = williamson(CovarianceMatrix(1, yi)).s.transpose();
    }

    const Mat m = xi * b;
    const Mat a = std::sqrt(std::abs(dets[i])) * m.inverse();

    x_tilde.block<2, 2>(2 * i, 2 * i) =
        std::sqrt(std::abs(dets[i])) * Mat::Identity(2, 2);
    Mat yt = b.transpose() * yi * b;
    yt = 0.5 * (yt + yt.transpose());
    // Snap to the exact scalar form; the residual is within kValidityTol.
    y_tilde.block<2, 2>(2 * i, 2 * i) =
        0.5 * yt.trace() * Mat::Identity(2, 2);

    cert.pre.push_back(a);
    cert.post.push_back(b);
  }
  cert.reduced =
      GaussianChannel(std::move(x_tilde), std::move(y_tilde),
                      std::vector<int>(n, 1));
  return cert;
}

CovarianceMatrix ReductionCertificate::map_input_back(
    const CovarianceMatrix& gamma) const {
  const int n = gamma.n;
  Mat a = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    a.block<2, 2>(2 * i, 2 * i) = pre[i];
  }
  Mat out = a.transpose() * gamma.matrix * a;
  if (sign_flip_applied) {
    Mat theta = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) theta.block<2, 2>(2 * i, 2 * i) = sigma_z();
    out = theta * out * theta;
  }
  out = 0.5 * (out + out.transpose());
  return CovarianceMatrix(n, std::move(out));
}

// --- JSON ------------------------------------------------------------------

namespace {

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("channel spec: expected a matrix");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) {
      throw std::invalid_argument("channel spec: ragged matrix");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

GaussianChannel factor_from_json(const json& j) {
  if (j.contains("kind")) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "attenuation" || kind == "amplification") {
      const double eps = j.at("eps").get<double>();
      if (kind == "attenuation" && eps >= 1.0) {
        throw std::invalid_argument("attenuation requires eps < 1");
      }
      if (kind == "amplification" && eps <= 1.0) {
        throw std::invalid_argument("amplification requires eps > 1");
      }
      return atten_amp(eps, j.value("modes", 1));
    }
    if (kind == "classical_noise") {
      return classical_noise(mat_from_json(j.at("Y")));
    }
    if (kind == "thermal_bath") {
      const Mat bath = mat_from_json(j.at("bath"));
      return thermal_bath(j.at("rate").get<double>(),
                          j.at("time").get<double>(),
                          CovarianceMatrix(static_cast<int>(bath.rows()) / 2,
                                           bath));
    }
    throw std::invalid_argument("channel spec: unknown kind '" + kind + "'");
  }
  const Mat x = mat_from_json(j.at("X"));
  const Mat y = mat_from_json(j.at("Y"));
  const int modes = j.value("modes", static_cast<int>(x.rows()) / 2);
  if (2 * modes != x.rows()) {
    throw std::invalid_argument("channel spec: modes does not match X size");
  }
  return GaussianChannel(x, y, {modes});
}

}  // namespace

GaussianChannel channel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("channel spec: bad JSON: ") +
                                e.what());
  }
  try {
    std::vector<GaussianChannel> factors;
    for (const auto& f : j.at("factors")) factors.push_back(factor_from_json(f));
    GaussianChannel ch = tensor(factors);
    if (j.contains("n") && j.at("n").get<int>() != ch.n) {
      throw std::invalid_argument("channel spec: declared n mismatch");
    }
    return ch;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("channel spec: ") + e.what());
  }
}

GaussianChannel channel_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open channel spec: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return channel_from_json(buf.str());
}

std::string channel_to_json(const GaussianChannel& ch) {
  json factors = json::array();
  for (int i = 0; i < ch.factor_count(); ++i) {
    const GaussianChannel f = ch.factor(i);
    factors.push_back(
        {{"modes", f.n}, {"X", mat_to_json(f.x)}, {"Y", mat_to_json(f.y)}});
  }
  json j = {{"n", ch.n}, {"factors", factors}};
  return j.dump(2);
}

CovarianceMatrix cm_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CM file: " + path);
  json j;
  try {
    in >> j;
    const Mat m = mat_from_json(j.at("matrix"));
    const int n = j.value("n", static_cast<int>(m.rows()) / 2);
    if (2 * n != m.rows()) {
      throw std::invalid_argument("CM file: n does not match matrix size");
    }
    return CovarianceMatrix(n, m);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("CM file: ") + e.what());
  }
}

}  // namespace gauss
