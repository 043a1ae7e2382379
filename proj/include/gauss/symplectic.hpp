#pragma once

#include <vector>

#include "gauss/linalg.hpp"

namespace gauss {

// Block-diagonal antisymmetric form with 2x2 blocks [[0,1],[-1,0]], one per
// mode; quadratures are ordered (x1,p1,...,xn,pn) throughout.
Mat symplectic_form(int n);

bool is_symplectic(const Mat& s, double tol = kValidityTol);

// A real symmetric 2n x 2n second-moment matrix, vacuum-normalized so the
// vacuum is the identity.
struct CovarianceMatrix {
  int n = 0;
  Mat matrix;

  CovarianceMatrix() = default;
  CovarianceMatrix(int n_, Mat m) : n(n_), matrix(std::move(m)) {}
  static CovarianceMatrix vacuum(int n);
};

// Throws std::invalid_argument unless gamma is symmetric and satisfies the
// state condition (all symplectic eigenvalues >= 1 - tol).
void check_state(const CovarianceMatrix& gamma, double tol = kValidityTol);
bool is_valid_state(const CovarianceMatrix& gamma, double tol = kValidityTol);

// Generators K of Sp(2n,R), each of the form sigma*J with J symmetric.
// Ordering: all n^2 compact (antisymmetric) generators first -- per-mode
// rotations for modes 1..n, then the two compact two-mode generators for
// each pair (i<j) in lexicographic order -- followed by the non-compact
// ones: per-mode delta and beta, then the two non-compact two-mode
// generators per pair.
struct GeneratorBasis {
  int n = 0;
  std::vector<Mat> generators;
  std::vector<bool> compact_flags;

  int count() const { return static_cast<int>(generators.size()); }
  int compact_count() const { return n * n; }
};

GeneratorBasis generator_basis(int n);

// Decreasingly ordered symplectic eigenvalues, computed as square roots of
// the (doubly degenerate) eigenvalues of sigma*gamma*sigma^T*gamma through
// the symmetric proxy g^{1/2} sigma^T sigma g^{1/2} route.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma);

struct WilliamsonResult {
  Mat s;                      // symplectic, s*gamma*s^T = diag(nu_i, nu_i)
  std::vector<double> spectrum;  // decreasing
};

WilliamsonResult williamson(const CovarianceMatrix& gamma);

struct EulerResult {
  Mat o_left;   // orthogonal symplectic
  Mat z;        // diag(z1,1/z1,...), z_i >= 1
  Mat o_right;  // orthogonal symplectic
};

// S = o_left * z * o_right.
EulerResult euler_decompose(const Mat& s);

// Trace of the 2x2 diagonal block of p belonging to mode j (1-based).
double block_trace(const Mat& p, int j);

// d nu_j / dk at k=0 for gamma_w + k*P, with gamma_w in Williamson form and
// a non-degenerate spectrum. Throws DegenerateSpectrumError otherwise.
std::vector<double> symplectic_eigenvalue_derivative(
    const CovarianceMatrix& gamma_w, const Mat& p);

}  // namespace gauss
