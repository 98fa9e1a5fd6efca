#include "moprl/matrix_polynomial.hpp"

namespace moprl {

MatrixPolynomial::MatrixPolynomial(int dim, std::vector<Matrix> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Matrix::Zero(dim_, dim_));
  for (const auto& c : coeffs_) {
    if (c.rows() != dim_ || c.cols() != dim_)
      throw std::invalid_argument("MatrixPolynomial: coefficient dimension mismatch");
  }
  trim();
}

void MatrixPolynomial::trim() {
  // exact zeros only; degree is structural, never a numerical judgement
  while (coeffs_.size() > 1 && max_abs(coeffs_.back()) == 0.0) coeffs_.pop_back();
}

MatrixPolynomial MatrixPolynomial::zero(int dim) {
  return MatrixPolynomial(dim, {Matrix::Zero(dim, dim)});
}

MatrixPolynomial MatrixPolynomial::constant(Matrix c) {
  int d = static_cast<int>(c.rows());
  return MatrixPolynomial(d, {std::move(c)});
}

MatrixPolynomial MatrixPolynomial::identity(int dim) {
  return constant(Matrix::Identity(dim, dim));
}

MatrixPolynomial MatrixPolynomial::monomial(Matrix c, int power) {
  int d = static_cast<int>(c.rows());
  std::vector<Matrix> cs(power + 1, Matrix::Zero(d, d));
  cs[power] = std::move(c);
  return MatrixPolynomial(d, std::move(cs));
}

bool MatrixPolynomial::is_zero() const {
  return coeffs_.size() == 1 && max_abs(coeffs_[0]) == 0.0;
}

Matrix MatrixPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Matrix::Zero(dim_, dim_);
  return coeffs_[k];
}

Matrix MatrixPolynomial::eval(Complex z) const {
  Matrix acc = coeffs_.back();
  for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) acc = acc * z + coeffs_[k];
  return acc;
}

MatrixPolynomial MatrixPolynomial::derivative() const {
  if (coeffs_.size() == 1) return zero(dim_);
  std::vector<Matrix> cs;
  cs.reserve(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) cs.push_back(static_cast<double>(k) * coeffs_[k]);
  return MatrixPolynomial(dim_, std::move(cs));
}

MatrixPolynomial MatrixPolynomial::adjoint_reflect() const {
  std::vector<Matrix> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(c.adjoint());
  return MatrixPolynomial(dim_, std::move(cs));
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("MatrixPolynomial: dimension mismatch");
  std::vector<Matrix> cs(std::max(coeffs_.size(), o.coeffs_.size()), Matrix::Zero(dim_, dim_));
  for (size_t k = 0; k < cs.size(); ++k)
    cs[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return MatrixPolynomial(dim_, std::move(cs));
}

MatrixPolynomial MatrixPolynomial::operator-(const MatrixPolynomial& o) const {
  return *this + (o * Complex(-1.0, 0.0));
}

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("MatrixPolynomial: dimension mismatch");
  std::vector<Matrix> cs(coeffs_.size() + o.coeffs_.size() - 1, Matrix::Zero(dim_, dim_));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
  return MatrixPolynomial(dim_, std::move(cs));
}

MatrixPolynomial MatrixPolynomial::operator*(Complex s) const {
  std::vector<Matrix> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(s * c);
  return MatrixPolynomial(dim_, std::move(cs));
}

MatrixPolynomial MatrixPolynomial::left_mul(const Matrix& c) const {
  std::vector<Matrix> cs;
  cs.reserve(coeffs_.size());
  for (const auto& ck : coeffs_) cs.push_back(c * ck);
  return MatrixPolynomial(dim_, std::move(cs));
}

MatrixPolynomial MatrixPolynomial::right_mul(const Matrix& c) const {
  std::vector<Matrix> cs;
  cs.reserve(coeffs_.size());
  for (const auto& ck : coeffs_) cs.push_back(ck * c);
  return MatrixPolynomial(dim_, std::move(cs));
}

double MatrixPolynomial::max_coeff_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, max_abs(c));
  return m;
}

Matrix poly_eval_naive(const MatrixPolynomial& p, Complex z) {
  Matrix acc = Matrix::Zero(p.dim(), p.dim());
  Complex zp = 1.0;
  for (int k = 0; k <= p.degree(); ++k) {
    acc += p.coeff(k) * zp;
    zp *= z;
  }
  return acc;
}

}  // namespace moprl
