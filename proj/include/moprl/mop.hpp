#pragma once

#include "moprl/moments.hpp"

namespace moprl {

/// Per-degree ledger of a monic matrix orthogonal polynomial sequence.
///
/// Naming: `gram[n]` is the norm matrix int P_n W P_n^* dx and `gamma[n]` its
/// inverse, so that the recurrence coefficient beta_n equals
/// gamma[n]^{-1} gamma[n-1] = gram[n] * gamma[n-1]. `kappa[n]` is the
/// Hermitian PSD square root of gamma[n], which pins the unitary freedom of
/// the orthonormal family.
struct MopSequence {
  WeightSpec spec;
  int n_max = 0;
  MomentTable moments;

  std::vector<MatrixPolynomial> monic;        // degrees 0..n_max, leading coefficient I
  std::vector<std::vector<Matrix>> a;         // a[n][j], j = 0..n-1
  std::vector<Matrix> gram;                   // gamma_n^{-1}
  std::vector<Matrix> gamma;                  // gamma_n (Hermitian positive definite)
  std::vector<Matrix> kappa;                  // gamma_n^{1/2}
  std::vector<Matrix> kappa_inv;              // gamma_n^{-1/2}
  std::vector<Matrix> alpha;                  // alpha_0..alpha_{n_max-1}
  std::vector<Matrix> beta;                   // beta[0] unused zero; beta_1..beta_{n_max}
  std::vector<std::vector<Matrix>> b_rows;    // b_rows[n][k-n] = int x^k P_n W dx
  std::vector<int> b_hi;                      // largest k stored per row
  std::vector<MatrixPolynomial> second_kind;  // degrees -; Q_0 = 0, Q_1 = mu_0
  std::vector<double> hankel_cond;            // condition estimate per degree solve
  bool hankel_warning = false;                // any solve above the warn threshold

  /// Coefficient of x^j in the monic polynomial of degree n: I at j = n,
  /// zero outside 0 <= j <= n.
  Matrix a_coeff(int n, int j) const;

  /// b_{n,k} = int x^k P_n W dx; exactly zero for k < n (orthogonality),
  /// throws when k exceeds the stored range.
  Matrix b_coeff(int n, int k) const;

  /// kappa_n P_n, orthonormal under the weight.
  MatrixPolynomial orthonormal(int n) const;

  /// kappa_n Q_n: second-kind mate of the orthonormal family.
  MatrixPolynomial orthonormal_second_kind(int n) const;

  /// A_n = kappa_{n-1} kappa_n^{-1}, n >= 1.
  Matrix recurrence_An(int n) const;
};

struct BuildOptions {
  /// Moment orders beyond the minimum 2*n_max + deg(G) + 2; normally zero.
  int extra_moment_order = 0;
};

/// Builds the full ledger. Each degree is solved independently from the block
/// Hankel system, so downstream recurrence checks are genuine cross
/// validations rather than identities of the construction.
MopSequence build_sequence(const WeightSpec& spec, int n_max, double tol,
                           const BuildOptions& opts = {});

/// Moment contraction sum_j a_{n,j} mu_{j+k}; exact zero for k < n.
Matrix b_direct(const MopSequence& seq, int n, int k);

/// b_{n-k,n} for k = 0..n recovered from the inverse of the unit block lower
/// triangular coefficient matrix of the monic family (an independent route to
/// the same numbers as b_direct).
std::vector<Matrix> omega_inverse_b(const MopSequence& seq, int n);

/// Second-kind polynomial assembled directly from the moment table.
MatrixPolynomial second_kind_from_moments(const MopSequence& seq, int n);

/// (P, Q)_W = int P W Q^* dx by moment contraction.
Matrix inner_product(const MomentTable& table, const MatrixPolynomial& p,
                     const MatrixPolynomial& q);

/// Cauchy transform (2 pi i)^{-1} int F(t) / (t - z)^{1+deriv} dt of
/// F = P_n W (monic times weight); deriv = 1 gives d/dz of the transform.
Matrix cauchy_monic_weight(const MopSequence& seq, int n, Complex z, int deriv = 0);

/// Same for F = W P_n^*.
Matrix cauchy_weight_monic_adj(const MopSequence& seq, int n, Complex z, int deriv = 0);

/// Cauchy transform of the weight itself.
Matrix cauchy_weight(const WeightSpec& spec, Complex z, double tol, double radius,
                     int deriv = 0);

/// 2N x 2N solution of the characterizing Riemann-Hilbert problem at z off
/// the real axis, and its inverse, assembled from the ledger.
Matrix assemble_rh(const MopSequence& seq, int n, Complex z);
Matrix assemble_rh_inverse(const MopSequence& seq, int n, Complex z);

/// d/dz of assemble_rh: polynomial blocks are differentiated exactly, the
/// Cauchy blocks use the squared-kernel transform.
Matrix assemble_rh_derivative(const MopSequence& seq, int n, Complex z);

/// Christoffel-Darboux kernel, summed definition.
Matrix cd_kernel_sum(const MopSequence& seq, int n, double x, double y);

/// Christoffel-Darboux kernel, closed form; requires |x - y| > 1e-8.
Matrix cd_kernel_closed(const MopSequence& seq, int n, double x, double y);

}  // namespace moprl
