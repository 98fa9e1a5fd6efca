#pragma once

#include "moprl/matrix.hpp"
#include "moprl/matrix_polynomial.hpp"

#include <optional>
#include <string>

namespace moprl {

/// True when m^dim vanishes exactly (entries below 1e-300 in magnitude).
bool is_nilpotent(const Matrix& m);

/// Matrix exponential. Nilpotent arguments use the exact finite series;
/// everything else falls back to Pade scaling-and-squaring.
Matrix expm(const Matrix& m);

enum class WeightFamily {
  ScalarHermite,  // e^{-x^2}, N = 1
  HermiteA,       // e^{-x^2} e^{Ax} e^{A*x}
  HermiteB,       // e^{-x^2} e^{Bx^2} e^{B*x^2}
  FreudA,         // e^{-x^4} e^{Ax} e^{A*x}
  FreudB,         // e^{-x^4} e^{Bx^2} e^{B*x^2}
  PolyU,          // e^{-x^2} U(x) U*(x), U = I + A1 x + A2 x^2
  Custom,         // tabulated factor T plus a supplied polynomial G
};

std::string family_name(WeightFamily f);
WeightFamily family_from_name(const std::string& name);

/// A weight family instance: evaluators for the factor T(x), the weight
/// W(x) = T(x) T*(x), and the polynomial G with T' = G T.
class WeightSpec {
 public:
  static WeightSpec scalar_hermite();
  static WeightSpec hermite_a(Matrix a);
  static WeightSpec hermite_b(Matrix b);
  static WeightSpec freud_a(Matrix a);
  static WeightSpec freud_b(Matrix b);
  static WeightSpec poly_u(Matrix a1, Matrix a2, int q_degree = 2);
  static WeightSpec custom(MatrixPolynomial g, std::vector<double> grid,
                           std::vector<Matrix> values);

  /// Default parameter choice for a family at dimension `dim`: the nilpotent
  /// single superdiagonal for A/B parameters, the 4x4 worked example for PolyU.
  static WeightSpec default_for(WeightFamily f, int dim);

  WeightFamily family() const { return family_; }
  int dim() const { return dim_; }
  const MatrixPolynomial& g_poly() const { return g_; }
  int g_degree() const { return g_.degree(); }
  const std::string& description() const { return description_; }

  /// Degree of the scalar envelope exponent (2 for e^{-x^2}, 4 for e^{-x^4}).
  int envelope_degree() const { return envelope_degree_; }
  /// Crude growth allowance for the non-envelope factor, used to pick the
  /// truncation radius of moment quadrature.
  double growth_margin() const;

  /// True when the weight is an even matrix function of x.
  bool even_weight() const;
  /// True when all parameter matrices are real (so ledger entries should be too).
  bool real_parameters() const;

  /// Entire extension of the factor T. Exact for nilpotent exponents and for
  /// the polynomial family. Unsupported for Custom (tabulated) specs.
  Matrix t_eval(Complex z) const;
  Matrix t_eval(double x) const;

  /// W(x) = T(x) T(x)^* for real x; Hermitian PSD by construction.
  Matrix weight_eval(double x) const;

  const Matrix& param_a() const { return A_; }
  const Matrix& param_b() const { return B_; }
  const Matrix& param_a1() const { return A1_; }
  const Matrix& param_a2() const { return A2_; }

  const std::vector<double>& custom_grid() const { return t_grid_; }
  const std::vector<Matrix>& custom_values() const { return t_values_; }

  /// Default-constructed specs are placeholders; use the factories.
  WeightSpec() = default;

 private:
  WeightFamily family_ = WeightFamily::ScalarHermite;
  int dim_ = 1;
  int envelope_degree_ = 2;
  Matrix A_, B_, A1_, A2_;
  MatrixPolynomial g_;
  std::string description_;
  std::vector<double> t_grid_;
  std::vector<Matrix> t_values_;
};

/// Checks the two algebraic constraints on the degree-2 polynomial factor
/// U = I + A1 x + A2 x^2 with unit determinant (plus their consequences).
bool poly_u_validate(const Matrix& a1, const Matrix& a2, double tol = 1e-12);

struct CommutativityReport {
  double max_residual = 0.0;  // max over grid pairs of ||W(x)W(y) - W(y)W(x)||
  bool reduces_to_scalar_candidate = false;
};

CommutativityReport commutativity_probe(const WeightSpec& spec, const std::vector<double>& grid,
                                        double tol = 1e-12);

/// The structured pair (A, J) with commutator identities ad_A(J) = -A (case 1)
/// or ad_A(J) = -A + A^2 (case 2), which make H(x) = e^{Ax} (iJ) e^{-Ax} a
/// degree-1 polynomial and unlock zeroth-order ladder relations.
struct AdConditionCase {
  int variant = 1;  // 1: A = L; 2: A = L(I+L)^{-1}
  Matrix L;         // nilpotent superdiagonal, entries nu_k
  Matrix J;         // diag(N-1, N-2, ..., 0)
  Matrix A;
  MatrixPolynomial H;  // i(J - A x) resp. i(J - (A - A^2) x)

  static AdConditionCase make(int variant, int dim, std::vector<Complex> nu = {});

  /// Exact commutator identities; `tol` only absorbs float rounding for
  /// non-integer nu.
  bool conditions_hold(double tol = 0.0) const;

  /// The Hermite-type weight spec this case belongs to.
  WeightSpec weight() const { return WeightSpec::hermite_a(A); }
};

}  // namespace moprl
