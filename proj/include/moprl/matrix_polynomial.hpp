#pragma once

#include "moprl/matrix.hpp"

#include <vector>

namespace moprl {

/// Polynomial in one scalar complex variable with square matrix coefficients,
/// stored by ascending power. Trailing coefficients that are exactly zero are
/// trimmed, so the degree is structural rather than numerical. Values are
/// immutable in spirit: every operation returns a fresh polynomial.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(int dim, std::vector<Matrix> coeffs);

  static MatrixPolynomial zero(int dim);
  static MatrixPolynomial constant(Matrix c);
  static MatrixPolynomial identity(int dim);
  /// c * z^k
  static MatrixPolynomial monomial(Matrix c, int power);

  int dim() const { return dim_; }
  /// Structural degree; the zero polynomial has degree 0 with a zero constant.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;

  /// Coefficient of z^k; zero matrix beyond the stored degree.
  Matrix coeff(int k) const;
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  /// Horner evaluation.
  Matrix eval(Complex z) const;

  MatrixPolynomial derivative() const;

  /// Coefficient-wise Hermitian conjugate, i.e. z -> (p(conj z))^* as a function.
  MatrixPolynomial adjoint_reflect() const;

  MatrixPolynomial operator+(const MatrixPolynomial& o) const;
  MatrixPolynomial operator-(const MatrixPolynomial& o) const;
  MatrixPolynomial operator*(const MatrixPolynomial& o) const;  // noncommutative convolution
  MatrixPolynomial operator*(Complex s) const;

  MatrixPolynomial left_mul(const Matrix& c) const;   // c * p
  MatrixPolynomial right_mul(const Matrix& c) const;  // p * c

  /// max over coefficients of the largest entry magnitude.
  double max_coeff_norm() const;

 private:
  void trim();
  int dim_ = 0;
  std::vector<Matrix> coeffs_;
};

/// Naive power-sum evaluation, kept as an independent check of Horner.
Matrix poly_eval_naive(const MatrixPolynomial& p, Complex z);

}  // namespace moprl
