#include "moprl/ladder.hpp"

#include "moprl/quadrature.hpp"

#include <cmath>

namespace moprl {

namespace {

const Complex kTwoPiI(0.0, 2.0 * M_PI);

// Section polynomial with the zero extension of the a-table, valid for any
// k >= 0 (for k > n this equals z^{k-n} times the monic polynomial).
MatrixPolynomial monic_section(const MopSequence& seq, int n, int k) {
  const int d = seq.spec.dim();
  std::vector<Matrix> cs(static_cast<size_t>(k) + 1, Matrix::Zero(d, d));
  for (int i = 0; i <= k; ++i) cs[static_cast<size_t>(k - i)] = seq.a_coeff(n, n - i);
  return MatrixPolynomial(d, std::move(cs));
}

}  // namespace

MatrixPolynomial truncated_monic(const MopSequence& seq, int n, int k) {
  if (k < 0 || k > n) throw std::out_of_range("truncated_monic: need 0 <= k <= n");
  return monic_section(seq, n, k);
}

MatrixPolynomial delta_poly(const MopSequence& seq, int n, int j,
                            const MatrixPolynomial& source) {
  const int m = source.degree();
  if (j < 0 || j > m) throw std::out_of_range("delta_poly: need 0 <= j <= deg(source)");
  MatrixPolynomial acc = MatrixPolynomial::zero(seq.spec.dim());
  for (int k = 0; k <= j; ++k)
    acc = acc + monic_section(seq, n, k).right_mul(source.coeff(m - j + k));
  return acc;
}

MatrixPolynomial ladder_A(const MopSequence& seq, int n, const MatrixPolynomial& source) {
  const int d = seq.spec.dim();
  const int m = source.degree();
  if (n < 0 || n > seq.n_max) throw std::out_of_range("ladder_A: degree out of range");
  MatrixPolynomial acc = MatrixPolynomial::zero(d);
  for (int j = 0; j <= m - 1; ++j) {
    Matrix bk = seq.b_coeff(n, n + m - j - 1);
    MatrixPolynomial dj = delta_poly(seq, n, j, source);
    acc = acc + dj.adjoint_reflect().left_mul(bk) + dj.right_mul(bk.adjoint());
  }
  return acc.left_mul(-seq.gamma[static_cast<size_t>(n)]);
}

LadderCoeffs ladder_coeffs(const MopSequence& seq, int n, const MatrixPolynomial& source) {
  const int d = seq.spec.dim();
  if (n < 1 || n > seq.n_max) throw std::out_of_range("ladder_coeffs: need 1 <= n <= n_max");
  if (source.dim() != d) throw std::invalid_argument("ladder_coeffs: source dimension mismatch");
  const int m = source.degree();
  LadderCoeffs lc;
  lc.n = n;
  lc.source = source;
  lc.A_poly = ladder_A(seq, n, source);
  MatrixPolynomial acc = MatrixPolynomial::zero(d);
  for (int j = 0; j <= m; ++j) {
    acc = acc + delta_poly(seq, n, j, source).right_mul(seq.b_coeff(n - 1, n + m - j - 1).adjoint());
    acc = acc + delta_poly(seq, n - 1, j, source).adjoint_reflect().left_mul(
                    seq.b_coeff(n, n + m - j - 2));
  }
  lc.B_poly = acc.right_mul(seq.gamma[static_cast<size_t>(n - 1)]) * Complex(-1.0, 0.0);
  return lc;
}

Matrix f_matrix(const MopSequence& seq, int n, Complex z, const MatrixPolynomial& source) {
  const int d = seq.spec.dim();
  if (n < 1) throw std::out_of_range("f_matrix: the A-coefficient at degree -1 is undefined");
  LadderCoeffs lc = ladder_coeffs(seq, n, source);
  MatrixPolynomial a_prev = ladder_A(seq, n - 1, source);
  Matrix f(2 * d, 2 * d);
  f.topLeftCorner(d, d) = -lc.B_poly.eval(z);
  f.topRightCorner(d, d) = -(seq.gram[static_cast<size_t>(n)] * lc.A_poly.eval(z)) / kTwoPiI;
  f.bottomLeftCorner(d, d) = kTwoPiI * a_prev.eval(z) * seq.gamma[static_cast<size_t>(n - 1)];
  f.bottomRightCorner(d, d) = lc.B_poly.adjoint_reflect().eval(z);
  return f;
}

namespace {

Matrix expansion_y(const MopSequence& seq, int n, int i) {
  const int d = seq.spec.dim();
  Matrix y(2 * d, 2 * d);
  if (i == 0) return Matrix::Identity(2 * d, 2 * d);
  const Matrix& gm = seq.gamma[static_cast<size_t>(n - 1)];
  y.topLeftCorner(d, d) = seq.a_coeff(n, n - i);
  y.topRightCorner(d, d) = -seq.b_coeff(n, n + i - 1) / kTwoPiI;
  y.bottomLeftCorner(d, d) = -kTwoPiI * gm * seq.a_coeff(n - 1, n - i);
  y.bottomRightCorner(d, d) = gm * seq.b_coeff(n - 1, n + i - 1);
  return y;
}

Matrix expansion_y_tilde(const MopSequence& seq, int n, int i) {
  const int d = seq.spec.dim();
  Matrix y(2 * d, 2 * d);
  if (i == 0) return Matrix::Identity(2 * d, 2 * d);
  const Matrix& gm = seq.gamma[static_cast<size_t>(n - 1)];
  y.topLeftCorner(d, d) = seq.b_coeff(n - 1, n + i - 1).adjoint() * gm;
  y.topRightCorner(d, d) = seq.b_coeff(n, n + i - 1).adjoint() / kTwoPiI;
  y.bottomLeftCorner(d, d) = kTwoPiI * seq.a_coeff(n - 1, n - i).adjoint() * gm;
  y.bottomRightCorner(d, d) = seq.a_coeff(n, n - i).adjoint();
  return y;
}

}  // namespace

Matrix f_matrix_via_expansion(const MopSequence& seq, int n, Complex z,
                              const MatrixPolynomial& source) {
  const int d = seq.spec.dim();
  const int m = source.degree();
  if (m > 2)
    throw std::invalid_argument("f_matrix_via_expansion: only sources of degree <= 2");
  if (n < 1) throw std::out_of_range("f_matrix_via_expansion: need n >= 1");

  std::vector<Matrix> y(m + 1), yt(m + 1), mt(m + 1);
  for (int i = 0; i <= m; ++i) {
    y[static_cast<size_t>(i)] = expansion_y(seq, n, i);
    yt[static_cast<size_t>(i)] = expansion_y_tilde(seq, n, i);
    Matrix block = Matrix::Zero(2 * d, 2 * d);
    block.topLeftCorner(d, d) = source.coeff(i);
    block.bottomRightCorner(d, d) = -source.coeff(i).adjoint();
    mt[static_cast<size_t>(i)] = block;
  }

  Matrix f = Matrix::Zero(2 * d, 2 * d);
  Complex zp = 1.0;
  for (int k = 0; k <= m; ++k) {
    Matrix ck = Matrix::Zero(2 * d, 2 * d);
    for (int j = k; j <= m; ++j)
      for (int i = 0; i <= j - k; ++i)
        ck += y[static_cast<size_t>(i)] * mt[static_cast<size_t>(j)] *
              yt[static_cast<size_t>(j - i - k)];
    f += zp * ck;
    zp *= z;
  }
  return f;
}

OdeCoeffs::OdeCoeffs(const MopSequence& seq, int n, const MatrixPolynomial& source) : n_(n) {
  if (n < 1 || n + 1 > seq.n_max)
    throw std::out_of_range("ode_coeffs: need 1 <= n <= n_max - 1");
  dim_ = seq.spec.dim();
  LadderCoeffs lc_n = ladder_coeffs(seq, n, source);
  LadderCoeffs lc_np1 = ladder_coeffs(seq, n + 1, source);
  a_star_n_ = lc_n.A_poly.adjoint_reflect();
  a_star_n_deriv_ = a_star_n_.derivative();
  a_star_nm1_ = ladder_A(seq, n - 1, source).adjoint_reflect();
  b_n_ = lc_n.B_poly;
  b_n_deriv_ = b_n_.derivative();
  b_np1_ = lc_np1.B_poly;
  alpha_n_ = seq.alpha[static_cast<size_t>(n)];
  beta_n_ = seq.beta[static_cast<size_t>(n)];
}

bool OdeCoeffs::usable_at(Complex z) const {
  Matrix a = a_star_n_.eval(z);
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().minCoeff() > 1e-8;
}

Matrix OdeCoeffs::a_star_inv(Complex z) const {
  Matrix a = a_star_n_.eval(z);
  Eigen::JacobiSVD<Matrix> svd(a);
  if (svd.singularValues().minCoeff() <= 1e-8)
    throw SingularSampleError("ode_coeffs: A-coefficient is singular at the requested point");
  return a.inverse();
}

Matrix OdeCoeffs::M(Complex z) const {
  Matrix inv = a_star_inv(z);
  Matrix a = a_star_n_.eval(z);
  Matrix zi = z * Matrix::Identity(dim_, dim_) - alpha_n_;
  return -a_star_n_deriv_.eval(z) * inv + b_n_.eval(z) - a * zi + a * b_np1_.eval(z) * inv;
}

Matrix OdeCoeffs::N(Complex z) const {
  Matrix bn = b_n_.eval(z);
  return M(z) * bn - bn * bn + b_n_deriv_.eval(z) +
         a_star_n_.eval(z) * beta_n_ * a_star_nm1_.eval(z);
}

OdeCoeffs ode_coeffs(const MopSequence& seq, int n, const MatrixPolynomial& source) {
  return OdeCoeffs(seq, n, source);
}

namespace {

// int P_n(t) W'(t) P_k^*(t) / (t - z) dt with W' = G W + W G^*.
Matrix frame_integral(const MopSequence& seq, int n, int k, Complex z) {
  if (std::abs(z.imag()) <= 1e-6)
    throw std::domain_error("integral frame coefficients need z off the real axis");
  const int d = seq.spec.dim();
  const MatrixPolynomial& g = seq.spec.g_poly();
  const MatrixPolynomial& pn = seq.monic[static_cast<size_t>(n)];
  const MatrixPolynomial& pk = seq.monic[static_cast<size_t>(k)];
  auto f = [&](double t) {
    Matrix w = seq.spec.weight_eval(t);
    Matrix gt = g.eval(t);
    Matrix wp = gt * w + w * gt.adjoint();
    Matrix v = (pn.eval(t) * wp * pk.eval(t).adjoint()) / (t - z);
    return std::vector<Matrix>{v};
  };
  double eff_tol = seq.moments.tol / std::min(1.0, std::abs(z.imag()));
  QuadratureResult qr =
      integrate_family(f, 1, d, seq.moments.truncation_radius, eff_tol, 32);
  return qr.values[0];
}

}  // namespace

Matrix integral_ladder_A(const MopSequence& seq, int n, Complex z) {
  return -seq.gamma[static_cast<size_t>(n)] * frame_integral(seq, n, n, z);
}

Matrix integral_ladder_B(const MopSequence& seq, int n, Complex z) {
  if (n < 1) throw std::out_of_range("integral_ladder_B: need n >= 1");
  return -frame_integral(seq, n, n - 1, z) * seq.gamma[static_cast<size_t>(n - 1)];
}

Matrix integral_frame_matrix(const MopSequence& seq, int n, Complex z) {
  const int d = seq.spec.dim();
  if (n < 1) throw std::out_of_range("integral_frame_matrix: need n >= 1");
  Matrix bn = integral_ladder_B(seq, n, z);
  Matrix bn_star = integral_ladder_B(seq, n, std::conj(z)).adjoint();
  Matrix an = integral_ladder_A(seq, n, z);
  Matrix anm1 = integral_ladder_A(seq, n - 1, z);
  Matrix f(2 * d, 2 * d);
  f.topLeftCorner(d, d) = -bn;
  f.topRightCorner(d, d) = -(seq.gram[static_cast<size_t>(n)] * an) / kTwoPiI;
  f.bottomLeftCorner(d, d) = kTwoPiI * anm1 * seq.gamma[static_cast<size_t>(n - 1)];
  f.bottomRightCorner(d, d) = bn_star;
  return f;
}

}  // namespace moprl
