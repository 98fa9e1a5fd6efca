#pragma once

#include "moprl/mop.hpp"

namespace moprl {

/// Raised when a pointwise evaluation hits a (near-)singular matrix factor.
class SingularSampleError : public std::domain_error {
 public:
  explicit SingularSampleError(const std::string& what) : std::domain_error(what) {}
};

/// Top-(k+1) section of the monic polynomial of degree n:
/// z^k I + a_{n,n-1} z^{k-1} + ... + a_{n,n-k}, for 0 <= k <= n.
MatrixPolynomial truncated_monic(const MopSequence& seq, int n, int k);

/// Delta_{j,n}(z) = sum_{k=0}^{j} section_{n,k}(z) M_{m-j+k}, where M_i are
/// the coefficients of `source` (degree m) and sections beyond degree n use
/// the zero extension of the a-table.
MatrixPolynomial delta_poly(const MopSequence& seq, int n, int j, const MatrixPolynomial& source);

/// First-order frame coefficients attached to a polynomial source (the
/// logarithmic derivative of the weight factor, or a mate from a non-unique
/// factorization). A_poly has degree <= m-1, B_poly degree <= m.
struct LadderCoeffs {
  int n = 0;
  MatrixPolynomial source;
  MatrixPolynomial A_poly;
  MatrixPolynomial B_poly;
};

/// A-coefficient alone; defined for n >= 0.
MatrixPolynomial ladder_A(const MopSequence& seq, int n, const MatrixPolynomial& source);

/// Both coefficients; the B-coefficient needs degree n >= 1.
LadderCoeffs ladder_coeffs(const MopSequence& seq, int n, const MatrixPolynomial& source);

/// The 2N x 2N coefficient of the constant-jump frame's differential
/// equation, built from the ladder coefficients at n and n-1 (so n >= 1).
Matrix f_matrix(const MopSequence& seq, int n, Complex z, const MatrixPolynomial& source);

/// Same matrix assembled from the expansion blocks of the solution and its
/// inverse; only sources of degree <= 2 are supported. Serves as an
/// independent cross-construction of f_matrix.
Matrix f_matrix_via_expansion(const MopSequence& seq, int n, Complex z,
                              const MatrixPolynomial& source);

/// Coefficients of the second-order equation satisfied by the monic family,
/// exposed as evaluators because they are rational in z whenever the
/// A-coefficient is non-constant.
class OdeCoeffs {
 public:
  OdeCoeffs(const MopSequence& seq, int n, const MatrixPolynomial& source);

  Matrix M(Complex z) const;
  Matrix N(Complex z) const;

  /// True when the adjoint-reflected A-coefficient is safely invertible at z.
  bool usable_at(Complex z) const;

 private:
  Matrix a_star_inv(Complex z) const;
  int n_;
  int dim_;
  MatrixPolynomial a_star_n_, a_star_n_deriv_, a_star_nm1_;
  MatrixPolynomial b_n_, b_n_deriv_, b_np1_;
  Matrix alpha_n_, beta_n_;
};

OdeCoeffs ode_coeffs(const MopSequence& seq, int n, const MatrixPolynomial& source);

/// Integral-form frame coefficients, computed by quadrature against
/// W' = G W + W G^*; the boundary terms vanish for weights on the whole line.
Matrix integral_ladder_A(const MopSequence& seq, int n, Complex z);
Matrix integral_ladder_B(const MopSequence& seq, int n, Complex z);

/// The 2N x 2N integral-form frame matrix multiplying the solution in its
/// z-derivative identity.
Matrix integral_frame_matrix(const MopSequence& seq, int n, Complex z);

}  // namespace moprl
