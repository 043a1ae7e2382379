#pragma once

#include <string>
#include <vector>

#include "gauss/symplectic.hpp"

namespace gauss {

// Second-moment action gamma -> X^T gamma X + Y. mode_partition records the
// tensor factorization; X and Y are block diagonal accordingly.
struct GaussianChannel {
  int n = 0;
  Mat x;
  Mat y;
  std::vector<int> mode_partition;

  GaussianChannel() = default;
  GaussianChannel(Mat x_, Mat y_, std::vector<int> partition);

  static GaussianChannel identity(int n);

  int factor_count() const { return static_cast<int>(mode_partition.size()); }
  int factor_offset(int i) const;  // first mode of factor i
  GaussianChannel factor(int i) const;
  bool single_mode_factors() const;
};

CovarianceMatrix apply(const GaussianChannel& ch, const CovarianceMatrix& gamma);

struct ChannelVerdict {
  bool valid = false;
  double lmi_margin = 0.0;  // smallest eigenvalue of Y + i sigma - i X^T sigma X
  // Single-mode factors only: the determinant form of complete positivity;
  // margin = min_i (det Y_i - (det X_i - 1)^2), NaN when not applicable.
  bool det_check_applicable = false;
  bool det_check_valid = false;
  double det_margin = 0.0;
};

ChannelVerdict validate(const GaussianChannel& ch);

// Y = -(X^T sigma X - sigma) Y^+ (X^T sigma X - sigma) with Y^+ the
// Moore-Penrose inverse: the channel adds no noise beyond the dilation's
// uncertainty.
bool is_pure_channel(const GaussianChannel& ch, double tol = 1e-8);

GaussianChannel classical_noise(const Mat& y);
GaussianChannel atten_amp(double eps, int n);
GaussianChannel thermal_bath(double rate, double time,
                             const CovarianceMatrix& bath);

GaussianChannel tensor(const std::vector<GaussianChannel>& factors);

// Standard form of a channel with single-mode factors: each factor is
// brought to scalar X and Y blocks by symplectic congruences.
struct ReductionCertificate {
  GaussianChannel reduced;        // X~_i, Y~_i proportional to the identity
  std::vector<Mat> pre;           // symplectic A_i: X~_i = A_i X_i B_i
  std::vector<Mat> post;          // symplectic B_i: Y~_i = B_i^T Y_i B_i
  bool sign_flip_applied = false; // time reversal absorbed negative det X_i

  // Maps an argmin of the reduced problem back to the original channel.
  CovarianceMatrix map_input_back(const CovarianceMatrix& gamma) const;
};

ReductionCertificate reduce_standard_form(const GaussianChannel& ch);

// --- JSON channel spec (consumed by the CLI) ------------------------------
//
// {"n": 2, "factors": [
//    {"modes": 1, "X": [[...],[...]], "Y": [[...],[...]]},
//    {"kind": "attenuation", "eps": 0.5},
//    {"kind": "amplification", "eps": 2.0},
//    {"kind": "classical_noise", "Y": [[...],[...]]},
//    {"kind": "thermal_bath", "rate": 1.0, "time": 0.5, "bath": [[...],[...]]}
// ]}
//
// Matrices are row-major with quadrature ordering (x1,p1,...,xn,pn).

GaussianChannel channel_from_json(const std::string& text);
GaussianChannel channel_from_json_file(const std::string& path);
std::string channel_to_json(const GaussianChannel& ch);

CovarianceMatrix cm_from_json_file(const std::string& path);

}  // namespace gauss
