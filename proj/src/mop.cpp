#include "moprl/mop.hpp"

#include "moprl/quadrature.hpp"

#include <cmath>

namespace moprl {

namespace {

const Complex kTwoPiI(0.0, 2.0 * M_PI);

}  // namespace

Matrix MopSequence::a_coeff(int n, int j) const {
  const int d = spec.dim();
  if (n < 0 || n > n_max) throw std::out_of_range("a_coeff: degree out of range");
  if (j == n) return Matrix::Identity(d, d);
  if (j < 0 || j > n) return Matrix::Zero(d, d);
  return a[static_cast<size_t>(n)][static_cast<size_t>(j)];
}

Matrix MopSequence::b_coeff(int n, int k) const {
  const int d = spec.dim();
  if (n < 0 || n > n_max) throw std::out_of_range("b_coeff: degree out of range");
  if (k < n) return Matrix::Zero(d, d);
  if (k > b_hi[static_cast<size_t>(n)])
    throw std::out_of_range("b_coeff: moment order beyond the stored table");
  return b_rows[static_cast<size_t>(n)][static_cast<size_t>(k - n)];
}

MatrixPolynomial MopSequence::orthonormal(int n) const {
  return monic[static_cast<size_t>(n)].left_mul(kappa[static_cast<size_t>(n)]);
}

MatrixPolynomial MopSequence::orthonormal_second_kind(int n) const {
  return second_kind[static_cast<size_t>(n)].left_mul(kappa[static_cast<size_t>(n)]);
}

Matrix MopSequence::recurrence_An(int n) const {
  if (n < 1 || n > n_max) throw std::out_of_range("recurrence_An: need 1 <= n <= n_max");
  return kappa[static_cast<size_t>(n - 1)] * kappa_inv[static_cast<size_t>(n)];
}

Matrix inner_product(const MomentTable& table, const MatrixPolynomial& p,
                     const MatrixPolynomial& q) {
  const int d = table.dim;
  KahanMatrixSum acc(d);
  for (int j = 0; j <= p.degree(); ++j)
    for (int k = 0; k <= q.degree(); ++k) acc.add(p.coeff(j) * table.mu(j + k) * q.coeff(k).adjoint());
  return acc.value();
}

Matrix b_direct(const MopSequence& seq, int n, int k) {
  const int d = seq.spec.dim();
  if (k < n) return Matrix::Zero(d, d);
  if (n + k > seq.moments.max_order)
    throw std::out_of_range("b_direct: insufficient moments for the requested order");
  KahanMatrixSum acc(d);
  for (int j = 0; j <= n; ++j) acc.add(seq.a_coeff(n, j) * seq.moments.mu(j + k));
  return acc.value();
}

MopSequence build_sequence(const WeightSpec& spec, int n_max, double tol,
                           const BuildOptions& opts) {
  if (n_max < 0) throw std::invalid_argument("build_sequence: n_max must be >= 0");
  MopSequence seq;
  seq.spec = spec;
  seq.n_max = n_max;

  const int d = spec.dim();
  const int m = spec.g_degree();
  const int max_order = 2 * n_max + m + 2 + opts.extra_moment_order;
  seq.moments = compute_moments(spec, max_order, tol);

  seq.monic.resize(n_max + 1);
  seq.a.resize(n_max + 1);
  seq.gram.resize(n_max + 1);
  seq.gamma.resize(n_max + 1);
  seq.kappa.resize(n_max + 1);
  seq.kappa_inv.resize(n_max + 1);
  seq.hankel_cond.assign(n_max + 1, 1.0);
  seq.b_rows.resize(n_max + 1);
  seq.b_hi.resize(n_max + 1);

  for (int n = 0; n <= n_max; ++n) {
    std::vector<Matrix> coeffs;
    if (n == 0) {
      seq.a[0] = {};
    } else {
      // Orthogonality to all lower degrees as a block Hankel system; the
      // unknown block row enters from the left, so solve the adjoint system.
      std::vector<std::vector<Matrix>> h(n, std::vector<Matrix>(n));
      std::vector<Matrix> rhs(n);
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) h[k][j] = seq.moments.mu(k + j);
        rhs[k] = -seq.moments.mu(n + k);
      }
      BlockSolveResult sol = solve_block_system(h, rhs, kHankelRefuse);
      seq.hankel_cond[n] = sol.condition;
      if (sol.condition > kHankelWarn) seq.hankel_warning = true;
      seq.a[n].resize(n);
      for (int j = 0; j < n; ++j) seq.a[n][j] = sol.x[static_cast<size_t>(j)].adjoint();
    }
    coeffs.reserve(n + 1);
    for (int j = 0; j < n; ++j) coeffs.push_back(seq.a[n][j]);
    coeffs.push_back(Matrix::Identity(d, d));
    seq.monic[n] = MatrixPolynomial(d, std::move(coeffs));

    // gram_n = (P_n, P_n)_W via moment contraction.
    Matrix g = inner_product(seq.moments, seq.monic[n], seq.monic[n]);
    if (!is_hermitian(g, 1e-7))
      throw NonConvergentError("build_sequence: norm matrix lost Hermiticity");
    g = 0.5 * (g + g.adjoint());
    if (smallest_eigenvalue(g) <= 0.0)
      throw IllConditionedError("build_sequence: norm matrix not positive definite at degree " +
                                    std::to_string(n),
                                seq.hankel_cond[n]);
    seq.gram[n] = g;
    seq.gamma[n] = g.inverse();
    seq.kappa[n] = hermitian_sqrt(seq.gamma[n]);
    seq.kappa_inv[n] = hermitian_sqrt(seq.gram[n]);

    const int k_hi = std::min(std::max(2 * n_max - 1, n + m + 1), max_order - n);
    seq.b_hi[n] = k_hi;
    seq.b_rows[n].reserve(k_hi - n + 1);
    for (int k = n; k <= k_hi; ++k) seq.b_rows[n].push_back(b_direct(seq, n, k));
  }

  seq.alpha.resize(std::max(0, n_max));
  for (int n = 0; n + 1 <= n_max; ++n) seq.alpha[n] = seq.a_coeff(n, n - 1) - seq.a_coeff(n + 1, n);

  seq.beta.resize(n_max + 1, Matrix::Zero(d, d));
  for (int n = 1; n <= n_max; ++n) seq.beta[n] = seq.gram[n] * seq.gamma[n - 1];

  // Second-kind family by the shared three-term recurrence.
  seq.second_kind.resize(n_max + 1);
  seq.second_kind[0] = MatrixPolynomial::zero(d);
  if (n_max >= 1) seq.second_kind[1] = MatrixPolynomial::constant(seq.moments.mu(0));
  MatrixPolynomial x_shift(d, {Matrix::Zero(d, d), Matrix::Identity(d, d)});
  for (int n = 1; n + 1 <= n_max; ++n) {
    seq.second_kind[n + 1] = x_shift * seq.second_kind[n] -
                             seq.second_kind[n].left_mul(seq.alpha[n]) -
                             seq.second_kind[n - 1].left_mul(seq.beta[n]);
  }

  // Cross-validate the recurrence route against direct moment contraction.
  for (int n = 0; n <= n_max; ++n) {
    MatrixPolynomial direct = second_kind_from_moments(seq, n);
    double scale = std::max(1.0, direct.max_coeff_norm());
    for (double x : {0.35, -1.2, 2.4}) {
      double r = max_abs(seq.second_kind[n].eval(x) - direct.eval(x));
      double xs = scale * std::pow(std::abs(x), std::max(0, n - 1));
      if (r > 1e-7 * std::max(scale, xs))
        throw NonConvergentError("build_sequence: second-kind cross-validation failed at degree " +
                                 std::to_string(n));
    }
  }
  return seq;
}

std::vector<Matrix> omega_inverse_b(const MopSequence& seq, int n) {
  if (n < 0 || n > seq.n_max) throw std::out_of_range("omega_inverse_b: degree out of range");
  const int d = seq.spec.dim();
  // Unit block lower triangular inverse by forward substitution.
  std::vector<std::vector<Matrix>> inv(n + 1, std::vector<Matrix>(n + 1, Matrix::Zero(d, d)));
  for (int i = 0; i <= n; ++i) {
    inv[i][i] = Matrix::Identity(d, d);
    for (int j = i - 1; j >= 0; --j) {
      Matrix s = Matrix::Zero(d, d);
      for (int k = j; k < i; ++k) s += seq.a_coeff(i, k) * inv[k][j];
      inv[i][j] = -s;
    }
  }
  std::vector<Matrix> out;
  out.reserve(n + 1);
  for (int k = 0; k <= n; ++k)
    out.push_back(seq.gram[static_cast<size_t>(n - k)] * inv[n][n - k].adjoint());
  return out;
}

MatrixPolynomial second_kind_from_moments(const MopSequence& seq, int n) {
  const int d = seq.spec.dim();
  if (n == 0) return MatrixPolynomial::zero(d);
  std::vector<Matrix> cs(n, Matrix::Zero(d, d));
  for (int j = 0; j < n; ++j) {
    KahanMatrixSum acc(d);
    for (int k = j + 1; k <= n; ++k) acc.add(seq.a_coeff(n, k) * seq.moments.mu(k - 1 - j));
    cs[j] = acc.value();
  }
  return MatrixPolynomial(d, std::move(cs));
}

namespace {

void require_off_axis(Complex z) {
  if (std::abs(z.imag()) <= 1e-6)
    throw std::domain_error("Cauchy transform requested too close to the real axis");
}

Matrix cauchy_quadrature(const WeightSpec& spec, const MatrixPolynomial* left_poly,
                         bool adjoint_side, Complex z, double tol, double radius, int deriv) {
  require_off_axis(z);
  const int d = spec.dim();
  const double dist = std::abs(z.imag());
  const double eff_tol = tol / std::min(1.0, dist);
  auto f = [&](double t) {
    Matrix w = spec.weight_eval(t);
    Complex den = t - z;
    Complex kernel = 1.0 / den;
    if (deriv == 1) kernel = kernel / den;
    Matrix v;
    if (left_poly == nullptr) {
      v = kernel * w;
    } else if (!adjoint_side) {
      v = kernel * (left_poly->eval(t) * w);
    } else {
      v = kernel * (w * left_poly->eval(t).adjoint());
    }
    return std::vector<Matrix>{v};
  };
  QuadratureResult qr = integrate_family(f, 1, d, radius, eff_tol, 32);
  return qr.values[0] / kTwoPiI;
}

}  // namespace

Matrix cauchy_monic_weight(const MopSequence& seq, int n, Complex z, int deriv) {
  return cauchy_quadrature(seq.spec, &seq.monic[static_cast<size_t>(n)], false, z,
                           seq.moments.tol, seq.moments.truncation_radius, deriv);
}

Matrix cauchy_weight_monic_adj(const MopSequence& seq, int n, Complex z, int deriv) {
  return cauchy_quadrature(seq.spec, &seq.monic[static_cast<size_t>(n)], true, z,
                           seq.moments.tol, seq.moments.truncation_radius, deriv);
}

Matrix cauchy_weight(const WeightSpec& spec, Complex z, double tol, double radius, int deriv) {
  return cauchy_quadrature(spec, nullptr, false, z, tol, radius, deriv);
}

Matrix assemble_rh(const MopSequence& seq, int n, Complex z) {
  const int d = seq.spec.dim();
  Matrix y(2 * d, 2 * d);
  if (n == 0) {
    y.topLeftCorner(d, d) = Matrix::Identity(d, d);
    y.topRightCorner(d, d) =
        cauchy_weight(seq.spec, z, seq.moments.tol, seq.moments.truncation_radius);
    y.bottomLeftCorner(d, d) = Matrix::Zero(d, d);
    y.bottomRightCorner(d, d) = Matrix::Identity(d, d);
    return y;
  }
  const Matrix& gm = seq.gamma[static_cast<size_t>(n - 1)];
  y.topLeftCorner(d, d) = seq.monic[static_cast<size_t>(n)].eval(z);
  y.topRightCorner(d, d) = cauchy_monic_weight(seq, n, z);
  y.bottomLeftCorner(d, d) = -kTwoPiI * gm * seq.monic[static_cast<size_t>(n - 1)].eval(z);
  y.bottomRightCorner(d, d) = -kTwoPiI * gm * cauchy_monic_weight(seq, n - 1, z);
  return y;
}

Matrix assemble_rh_inverse(const MopSequence& seq, int n, Complex z) {
  const int d = seq.spec.dim();
  Matrix y(2 * d, 2 * d);
  if (n == 0) {
    y.topLeftCorner(d, d) = Matrix::Identity(d, d);
    y.topRightCorner(d, d) =
        -cauchy_weight(seq.spec, z, seq.moments.tol, seq.moments.truncation_radius);
    y.bottomLeftCorner(d, d) = Matrix::Zero(d, d);
    y.bottomRightCorner(d, d) = Matrix::Identity(d, d);
    return y;
  }
  const Matrix& gm = seq.gamma[static_cast<size_t>(n - 1)];
  y.topLeftCorner(d, d) = -kTwoPiI * cauchy_weight_monic_adj(seq, n - 1, z) * gm;
  y.topRightCorner(d, d) = -cauchy_weight_monic_adj(seq, n, z);
  y.bottomLeftCorner(d, d) =
      kTwoPiI * seq.monic[static_cast<size_t>(n - 1)].adjoint_reflect().eval(z) * gm;
  y.bottomRightCorner(d, d) = seq.monic[static_cast<size_t>(n)].adjoint_reflect().eval(z);
  return y;
}

Matrix assemble_rh_derivative(const MopSequence& seq, int n, Complex z) {
  const int d = seq.spec.dim();
  if (n < 1) throw std::out_of_range("assemble_rh_derivative: need n >= 1");
  const Matrix& gm = seq.gamma[static_cast<size_t>(n - 1)];
  Matrix y(2 * d, 2 * d);
  y.topLeftCorner(d, d) = seq.monic[static_cast<size_t>(n)].derivative().eval(z);
  y.topRightCorner(d, d) = cauchy_monic_weight(seq, n, z, 1);
  y.bottomLeftCorner(d, d) =
      -kTwoPiI * gm * seq.monic[static_cast<size_t>(n - 1)].derivative().eval(z);
  y.bottomRightCorner(d, d) = -kTwoPiI * gm * cauchy_monic_weight(seq, n - 1, z, 1);
  return y;
}

Matrix cd_kernel_sum(const MopSequence& seq, int n, double x, double y) {
  const int d = seq.spec.dim();
  if (n < 1 || n > seq.n_max + 1) throw std::out_of_range("cd_kernel_sum: degree out of range");
  KahanMatrixSum acc(d);
  for (int j = 0; j < n; ++j) {
    Matrix pj_y = seq.monic[static_cast<size_t>(j)].eval(y);
    Matrix pj_x = seq.monic[static_cast<size_t>(j)].eval(x);
    acc.add(pj_y.adjoint() * seq.gamma[static_cast<size_t>(j)] * pj_x);
  }
  return acc.value();
}

Matrix cd_kernel_closed(const MopSequence& seq, int n, double x, double y) {
  if (std::abs(x - y) <= 1e-8)
    throw std::domain_error("cd_kernel_closed: confluent arguments");
  if (n < 1 || n > seq.n_max) throw std::out_of_range("cd_kernel_closed: degree out of range");
  Matrix an = seq.recurrence_An(n);
  Matrix pn_x = seq.orthonormal(n).eval(x);
  Matrix pn1_x = seq.orthonormal(n - 1).eval(x);
  Matrix pn_y = seq.orthonormal(n).eval(y);
  Matrix pn1_y = seq.orthonormal(n - 1).eval(y);
  return (pn1_y.adjoint() * an * pn_x - pn_y.adjoint() * an.adjoint() * pn1_x) / (x - y);
}

}  // namespace moprl
