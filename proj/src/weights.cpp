#include "moprl/weights.hpp"

#include <cmath>

namespace moprl {

bool is_nilpotent(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  Matrix p = m;
  for (Eigen::Index k = 1; k < m.rows(); ++k) p = p * m;
  return max_abs(p) < 1e-300;
}

namespace {

Matrix expm_nilpotent(const Matrix& m) {
  const Eigen::Index n = m.rows();
  Matrix acc = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    term = term * m / static_cast<double>(k);
    acc += term;
  }
  return acc;
}

// Pade(13,13) with scaling and squaring; the usual order-13 theta bound.
Matrix expm_pade(const Matrix& m) {
  static const double b[] = {64764752532480000.0,
                             32382376266240000.0,
                             7771770303897600.0,
                             1187353796428800.0,
                             129060195264000.0,
                             10559470521600.0,
                             670442572800.0,
                             33522128640.0,
                             1323241920.0,
                             40840800.0,
                             960960.0,
                             16380.0,
                             182.0,
                             1.0};
  const double theta13 = 5.371920351148152;
  const Eigen::Index n = m.rows();
  double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  Matrix a = m / std::pow(2.0, s);

  Matrix id = Matrix::Identity(n, n);
  Matrix a2 = a * a;
  Matrix a4 = a2 * a2;
  Matrix a6 = a4 * a2;
  Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                  b[3] * a2 + b[1] * id);
  Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Matrix r = (v - u).fullPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

}  // namespace

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (is_nilpotent(m)) return expm_nilpotent(m);
  return expm_pade(m);
}

std::string family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::ScalarHermite: return "scalar-hermite";
    case WeightFamily::HermiteA: return "hermite-a";
    case WeightFamily::HermiteB: return "hermite-b";
    case WeightFamily::FreudA: return "freud-a";
    case WeightFamily::FreudB: return "freud-b";
    case WeightFamily::PolyU: return "poly-u";
    case WeightFamily::Custom: return "custom";
  }
  return "unknown";
}

WeightFamily family_from_name(const std::string& name) {
  if (name == "scalar-hermite") return WeightFamily::ScalarHermite;
  if (name == "hermite-a") return WeightFamily::HermiteA;
  if (name == "hermite-b") return WeightFamily::HermiteB;
  if (name == "freud-a") return WeightFamily::FreudA;
  if (name == "freud-b") return WeightFamily::FreudB;
  if (name == "poly-u") return WeightFamily::PolyU;
  if (name == "custom") return WeightFamily::Custom;
  throw ConfigError("unknown weight family: " + name);
}

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw ConfigError(std::string(what) + ": parameter matrix must be square and non-empty");
  if (!all_finite(m)) throw ConfigError(std::string(what) + ": parameter matrix has non-finite entries");
}

}  // namespace

WeightSpec WeightSpec::scalar_hermite() {
  WeightSpec s;
  s.family_ = WeightFamily::ScalarHermite;
  s.dim_ = 1;
  s.envelope_degree_ = 2;
  Matrix one = Matrix::Identity(1, 1);
  s.g_ = MatrixPolynomial(1, {Matrix::Zero(1, 1), -one});
  s.description_ = "scalar Gaussian weight e^{-x^2}";
  return s;
}

WeightSpec WeightSpec::hermite_a(Matrix a) {
  require_square(a, "hermite-a");
  WeightSpec s;
  s.family_ = WeightFamily::HermiteA;
  s.dim_ = static_cast<int>(a.rows());
  s.envelope_degree_ = 2;
  Matrix id = Matrix::Identity(s.dim_, s.dim_);
  s.g_ = MatrixPolynomial(s.dim_, {a, -id});
  s.A_ = std::move(a);
  s.description_ = "e^{-x^2} e^{Ax} e^{A*x}";
  return s;
}

WeightSpec WeightSpec::hermite_b(Matrix b) {
  require_square(b, "hermite-b");
  WeightSpec s;
  s.family_ = WeightFamily::HermiteB;
  s.dim_ = static_cast<int>(b.rows());
  s.envelope_degree_ = 2;
  Matrix id = Matrix::Identity(s.dim_, s.dim_);
  s.g_ = MatrixPolynomial(s.dim_, {Matrix::Zero(s.dim_, s.dim_), 2.0 * b - id});
  s.B_ = std::move(b);
  s.description_ = "e^{-x^2} e^{Bx^2} e^{B*x^2}";
  return s;
}

WeightSpec WeightSpec::freud_a(Matrix a) {
  require_square(a, "freud-a");
  WeightSpec s;
  s.family_ = WeightFamily::FreudA;
  s.dim_ = static_cast<int>(a.rows());
  s.envelope_degree_ = 4;
  Matrix id = Matrix::Identity(s.dim_, s.dim_);
  Matrix z = Matrix::Zero(s.dim_, s.dim_);
  s.g_ = MatrixPolynomial(s.dim_, {a, z, z, -2.0 * id});
  s.A_ = std::move(a);
  s.description_ = "e^{-x^4} e^{Ax} e^{A*x}";
  return s;
}

WeightSpec WeightSpec::freud_b(Matrix b) {
  require_square(b, "freud-b");
  WeightSpec s;
  s.family_ = WeightFamily::FreudB;
  s.dim_ = static_cast<int>(b.rows());
  s.envelope_degree_ = 4;
  Matrix id = Matrix::Identity(s.dim_, s.dim_);
  Matrix z = Matrix::Zero(s.dim_, s.dim_);
  s.g_ = MatrixPolynomial(s.dim_, {z, 2.0 * b, z, -2.0 * id});
  s.B_ = std::move(b);
  s.description_ = "e^{-x^4} e^{Bx^2} e^{B*x^2}";
  return s;
}

WeightSpec WeightSpec::poly_u(Matrix a1, Matrix a2, int q_degree) {
  require_square(a1, "poly-u");
  require_square(a2, "poly-u");
  if (a1.rows() != a2.rows()) throw ConfigError("poly-u: A1 and A2 must share a dimension");
  if (q_degree != 2)
    throw ConfigError("poly-u: only the Gaussian envelope (q_degree = 2) is supported");
  if (!poly_u_validate(a1, a2))
    throw ConfigError("poly-u: coefficients violate the unit-determinant constraints");
  WeightSpec s;
  s.family_ = WeightFamily::PolyU;
  s.dim_ = static_cast<int>(a1.rows());
  s.envelope_degree_ = 2;
  Matrix id = Matrix::Identity(s.dim_, s.dim_);
  // U' U^{-1} = A1 + (2 A2 - A1^2) x - A2 A1 x^2; the envelope adds -x I.
  s.g_ = MatrixPolynomial(s.dim_, {a1, 2.0 * a2 - a1 * a1 - id, -(a2 * a1)});
  s.A1_ = std::move(a1);
  s.A2_ = std::move(a2);
  s.description_ = "e^{-x^2} U(x) U*(x) with U = I + A1 x + A2 x^2";
  return s;
}

WeightSpec WeightSpec::custom(MatrixPolynomial g, std::vector<double> grid,
                              std::vector<Matrix> values) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw ConfigError("custom: grid and values must match and hold at least two samples");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("custom: grid must be strictly increasing");
  WeightSpec s;
  s.family_ = WeightFamily::Custom;
  s.dim_ = g.dim();
  s.envelope_degree_ = 2;
  for (const auto& v : values)
    if (v.rows() != s.dim_ || v.cols() != s.dim_)
      throw ConfigError("custom: sampled T values must match the dimension of G");
  s.g_ = std::move(g);
  s.t_grid_ = std::move(grid);
  s.t_values_ = std::move(values);
  s.description_ = "tabulated factor T with supplied G";
  return s;
}

WeightSpec WeightSpec::default_for(WeightFamily f, int dim) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  Matrix l = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) l(k, k + 1) = 1.0;
  switch (f) {
    case WeightFamily::ScalarHermite:
      return scalar_hermite();
    case WeightFamily::HermiteA:
      return hermite_a(l);
    case WeightFamily::HermiteB:
      return hermite_b(l);
    case WeightFamily::FreudA:
      return freud_a(l);
    case WeightFamily::FreudB:
      return freud_b(l);
    case WeightFamily::PolyU: {
      if (dim != 4) throw ConfigError("poly-u defaults are the 4x4 worked example");
      Matrix a1 = Matrix::Zero(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) a1(i, j) = 1.0;
      Matrix a2 = Matrix::Zero(dim, dim);
      a2(0, 3) = 1.0;                  // free entry
      a2(1, 3) = a1(1, 2) * a1(2, 3);  // forced product entry
      return poly_u(a1, a2);
    }
    case WeightFamily::Custom:
      throw ConfigError("custom weights have no default parameters");
  }
  throw ConfigError("unknown family");
}

double WeightSpec::growth_margin() const {
  switch (family_) {
    case WeightFamily::HermiteA:
    case WeightFamily::FreudA:
      return 2.0 * A_.cwiseAbs().colwise().sum().maxCoeff();
    default:
      return 1.0;
  }
}

bool WeightSpec::even_weight() const {
  return family_ == WeightFamily::ScalarHermite || family_ == WeightFamily::HermiteB ||
         family_ == WeightFamily::FreudB;
}

bool WeightSpec::real_parameters() const {
  for (const Matrix* m : {&A_, &B_, &A1_, &A2_}) {
    if (m->size() == 0) continue;
    if (m->imag().cwiseAbs().maxCoeff() > 0.0) return false;
  }
  return family_ != WeightFamily::Custom;
}

namespace {

Complex envelope_exponent(int q_degree, Complex z) {
  Complex z2 = z * z;
  return (q_degree == 2) ? -0.5 * z2 : -0.5 * z2 * z2;
}

}  // namespace

Matrix WeightSpec::t_eval(Complex z) const {
  const Complex q = envelope_exponent(envelope_degree_, z);
  Matrix id = Matrix::Identity(dim_, dim_);
  switch (family_) {
    case WeightFamily::ScalarHermite:
      return std::exp(q) * id;
    case WeightFamily::HermiteA:
    case WeightFamily::FreudA: {
      if (is_nilpotent(A_)) return std::exp(q) * expm((A_ * z).eval());
      return expm((q * id + A_ * z).eval());
    }
    case WeightFamily::HermiteB:
    case WeightFamily::FreudB: {
      if (is_nilpotent(B_)) return std::exp(q) * expm((B_ * (z * z)).eval());
      return expm((q * id + B_ * (z * z)).eval());
    }
    case WeightFamily::PolyU:
      return std::exp(q) * (id + A1_ * z + A2_ * (z * z));
    case WeightFamily::Custom:
      throw std::domain_error("custom weights only support real-axis evaluation");
  }
  throw std::logic_error("unreachable");
}

Matrix WeightSpec::t_eval(double x) const {
  if (family_ != WeightFamily::Custom) return t_eval(Complex(x, 0.0));
  if (x < t_grid_.front() || x > t_grid_.back())
    throw std::out_of_range("custom weight queried outside its tabulated grid");
  auto it = std::upper_bound(t_grid_.begin(), t_grid_.end(), x);
  size_t hi = std::min<size_t>(t_grid_.size() - 1, it - t_grid_.begin());
  size_t lo = hi == 0 ? 0 : hi - 1;
  if (hi == lo) return t_values_[lo];
  double w = (x - t_grid_[lo]) / (t_grid_[hi] - t_grid_[lo]);
  return (1.0 - w) * t_values_[lo] + w * t_values_[hi];
}

Matrix WeightSpec::weight_eval(double x) const {
  Matrix t = t_eval(x);
  return t * t.adjoint();
}

bool poly_u_validate(const Matrix& a1, const Matrix& a2, double tol) {
  if (a1.rows() != a1.cols() || a2.rows() != a2.cols() || a1.rows() != a2.rows()) return false;
  double scale = std::max({1.0, max_abs(a1), max_abs(a2)});
  double t = tol * scale * scale * scale;
  if (max_abs(a2 * a1 + a1 * a2 - a1 * a1 * a1) > t) return false;
  if (max_abs(a2 * (a1 * a1 - a2)) > t) return false;
  // algebraic consequences
  if (max_abs(a2 * a1 * a2) > t) return false;
  if (max_abs(a2 * a1 * a1 - a1 * a1 * a2) > t) return false;
  return true;
}

CommutativityReport commutativity_probe(const WeightSpec& spec, const std::vector<double>& grid,
                                        double tol) {
  if (grid.empty()) throw std::invalid_argument("commutativity_probe: empty grid");
  CommutativityReport rep;
  std::vector<Matrix> ws;
  ws.reserve(grid.size());
  for (double x : grid) ws.push_back(spec.weight_eval(x));
  for (size_t i = 0; i < ws.size(); ++i)
    for (size_t j = i + 1; j < ws.size(); ++j)
      rep.max_residual = std::max(rep.max_residual, max_abs(ws[i] * ws[j] - ws[j] * ws[i]));
  rep.reduces_to_scalar_candidate = rep.max_residual <= tol;
  return rep;
}

AdConditionCase AdConditionCase::make(int variant, int dim, std::vector<Complex> nu) {
  if (variant != 1 && variant != 2) throw ConfigError("ad-condition case must be 1 or 2");
  if (dim < 2) throw ConfigError("ad-condition cases need dimension >= 2");
  if (nu.empty()) nu.assign(dim - 1, Complex(1.0, 0.0));
  if (static_cast<int>(nu.size()) != dim - 1)
    throw ConfigError("ad-condition case: need dim-1 superdiagonal entries");
  AdConditionCase c;
  c.variant = variant;
  c.L = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) {
    if (nu[k] == Complex(0.0, 0.0)) throw ConfigError("ad-condition case: entries must be nonzero");
    c.L(k, k + 1) = nu[k];
  }
  c.J = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) c.J(k, k) = static_cast<double>(dim - 1 - k);
  if (variant == 1) {
    c.A = c.L;
  } else {
    // L (I + L)^{-1} via the finite Neumann series of the nilpotent L.
    Matrix acc = Matrix::Zero(dim, dim);
    Matrix p = c.L;
    double sign = 1.0;
    for (int j = 1; j < dim; ++j) {
      acc += sign * p;
      p = p * c.L;
      sign = -sign;
    }
    c.A = acc;
  }
  const Complex i01(0.0, 1.0);
  Matrix lin = (variant == 1) ? c.A : Matrix(c.A - c.A * c.A);
  c.H = MatrixPolynomial(dim, {i01 * c.J, -i01 * lin});
  return c;
}

bool AdConditionCase::conditions_hold(double tol) const {
  Matrix ad1 = A * J - J * A;
  Matrix target = (variant == 1) ? Matrix(-A) : Matrix(-A + A * A);
  if (max_abs(ad1 - target) > tol) return false;
  Matrix ad2 = A * ad1 - ad1 * A;
  return max_abs(ad2) <= tol;
}

}  // namespace moprl
