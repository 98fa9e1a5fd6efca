#include <doctest.h>

#include "moprl/weights.hpp"

#include <cmath>

using namespace moprl;

namespace {

Matrix nilpotent2() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  return a;
}

}  // namespace

TEST_CASE("expm: nilpotent series is exact") {
  Matrix a = nilpotent2();
  CHECK(is_nilpotent(a));
  Matrix e = expm(2.5 * a);
  CHECK(max_abs(e - (Matrix::Identity(2, 2) + 2.5 * a)) == 0.0);
}

TEST_CASE("expm: rotation generator") {
  double th = 0.8;
  Matrix g(2, 2);
  g << 0.0, -th, th, 0.0;
  Matrix e = expm(g);
  Matrix rot(2, 2);
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK(max_abs(e - rot) < 1e-14);
}

TEST_CASE("expm: scaling and squaring for larger norms") {
  Matrix g(2, 2);
  g << 3.0, 11.0, 0.0, -2.0;  // triangular, so the exponential is explicit
  Matrix e = expm(g);
  double e3 = std::exp(3.0), em2 = std::exp(-2.0);
  CHECK(std::abs(e(0, 0).real() - e3) < 1e-12 * e3);
  CHECK(std::abs(e(1, 1).real() - em2) < 1e-14);
  CHECK(std::abs(e(0, 1).real() - 11.0 * (e3 - em2) / 5.0) < 1e-12 * e3);
}

TEST_CASE("weight_eval closed forms") {
  WeightSpec sh = WeightSpec::scalar_hermite();
  CHECK(max_abs(sh.weight_eval(0.0) - Matrix::Identity(1, 1)) == 0.0);

  // e^{-x^2} (I + Ax)(I + A*x) with the 2x2 nilpotent A
  WeightSpec ha = WeightSpec::hermite_a(nilpotent2());
  for (double x : {-1.5, 0.3, 2.0}) {
    Matrix ref(2, 2);
    ref << 1.0 + x * x, x, x, 1.0;
    ref *= std::exp(-x * x);
    CHECK(max_abs(ha.weight_eval(x) - ref) < 1e-15);
  }

  WeightSpec fb = WeightSpec::freud_b(Matrix::Zero(1, 1));
  CHECK(std::abs(fb.weight_eval(1.0)(0, 0).real() - std::exp(-1.0)) < 1e-16);
}

TEST_CASE("weight is Hermitian positive definite on a probe grid") {
  std::vector<WeightSpec> specs = {
      WeightSpec::default_for(WeightFamily::HermiteA, 3),
      WeightSpec::default_for(WeightFamily::HermiteB, 2),
      WeightSpec::default_for(WeightFamily::FreudA, 2),
      WeightSpec::default_for(WeightFamily::FreudB, 3),
      WeightSpec::default_for(WeightFamily::PolyU, 4),
  };
  for (const auto& spec : specs) {
    for (double x : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
      Matrix w = spec.weight_eval(x);
      CHECK(is_hermitian(w, 1e-13));
      CHECK(smallest_eigenvalue(0.5 * (w + w.adjoint())) > 0.0);
    }
    CHECK(max_abs(spec.weight_eval(0.0) - Matrix::Identity(spec.dim(), spec.dim())) < 1e-14);
  }
}

TEST_CASE("t_eval solves T' = G T (finite differences, O(h^2))") {
  std::vector<WeightSpec> specs = {
      WeightSpec::hermite_a(nilpotent2()),
      WeightSpec::default_for(WeightFamily::HermiteB, 3),
      WeightSpec::default_for(WeightFamily::FreudA, 2),
      WeightSpec::default_for(WeightFamily::PolyU, 4),
  };
  for (const auto& spec : specs) {
    for (double x : {-1.2, 0.4, 1.7}) {
      double r_prev = 0.0;
      int step = 0;
      for (double h : {1e-3, 5e-4}) {
        Matrix fd = (spec.t_eval(x + h) - spec.t_eval(x - h)) / (2.0 * h);
        double r = max_abs(fd - spec.g_poly().eval(x) * spec.t_eval(x));
        CHECK(r < 1e-5);
        if (step == 1 && r_prev > 1e-12) CHECK(r < r_prev / 3.0);  // ~4x per halving
        r_prev = r;
        ++step;
      }
    }
  }
}

TEST_CASE("t_eval entire extension") {
  WeightSpec ha = WeightSpec::hermite_a(nilpotent2());
  CHECK(max_abs(ha.t_eval(Complex(0.0, 0.0)) - Matrix::Identity(2, 2)) == 0.0);
  Complex z(0.7, -1.3);
  Matrix ref = std::exp(-0.5 * z * z) * (Matrix::Identity(2, 2) + nilpotent2() * z);
  CHECK(max_abs(ha.t_eval(z) - ref) < 1e-15);

  WeightSpec pu = WeightSpec::default_for(WeightFamily::PolyU, 4);
  Matrix u1 = Matrix::Identity(4, 4) + pu.param_a1() + pu.param_a2();
  CHECK(max_abs(pu.t_eval(Complex(1.0, 0.0)) - std::exp(-0.5) * u1) < 1e-15);
}

TEST_CASE("g_poly per family") {
  Matrix a = nilpotent2();
  WeightSpec ha = WeightSpec::hermite_a(a);
  CHECK(ha.g_degree() == 1);
  CHECK(max_abs(ha.g_poly().coeff(0) - a) == 0.0);
  CHECK(max_abs(ha.g_poly().coeff(1) + Matrix::Identity(2, 2)) == 0.0);

  WeightSpec fb = WeightSpec::freud_b(Matrix::Zero(1, 1));
  CHECK(fb.g_degree() == 3);
  CHECK(fb.g_poly().coeff(0)(0, 0) == Complex(0.0, 0.0));
  CHECK(fb.g_poly().coeff(1)(0, 0) == Complex(0.0, 0.0));
  CHECK(fb.g_poly().coeff(3)(0, 0) == Complex(-2.0, 0.0));

  // the 4x4 worked example has A2 A1 = 0, so G drops to degree 1
  WeightSpec pu = WeightSpec::default_for(WeightFamily::PolyU, 4);
  CHECK(max_abs(pu.param_a2() * pu.param_a1()) == 0.0);
  CHECK(pu.g_degree() == 1);

  // a pair with A2 A1 != 0 keeps degree 2
  Matrix j4 = Matrix::Zero(4, 4);
  for (int k = 0; k < 3; ++k) j4(k, k + 1) = 1.0;
  WeightSpec pu2 = WeightSpec::poly_u(j4, 0.5 * j4 * j4);
  CHECK(pu2.g_degree() == 2);
}

TEST_CASE("poly_u_validate") {
  Matrix z4 = Matrix::Zero(4, 4);
  CHECK(poly_u_validate(z4, z4));

  WeightSpec pu = WeightSpec::default_for(WeightFamily::PolyU, 4);
  CHECK(poly_u_validate(pu.param_a1(), pu.param_a2()));

  Matrix e = nilpotent2();
  CHECK(poly_u_validate(e, e));  // both constraints hold for this degenerate pair
  Matrix d(2, 2);
  d << 1.0, 0.0, 0.0, 0.0;
  CHECK(!poly_u_validate(e, d));

  // J4 with A2 = A1^2/2 satisfies both constraints and has A2 A1 != 0
  Matrix j4 = Matrix::Zero(4, 4);
  for (int k = 0; k < 3; ++k) j4(k, k + 1) = 1.0;
  CHECK(poly_u_validate(j4, 0.5 * j4 * j4));
  CHECK(max_abs(0.5 * j4 * j4 * j4) > 0.0);
}

TEST_CASE("commutativity probe") {
  CHECK(commutativity_probe(WeightSpec::scalar_hermite(), {0.5, 1.0, -2.0}).max_residual == 0.0);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  auto rep = commutativity_probe(WeightSpec::hermite_a(diag), {0.5, 1.0});
  CHECK(rep.max_residual < 1e-14);
  CHECK(rep.reduces_to_scalar_candidate);

  auto rep2 = commutativity_probe(WeightSpec::hermite_a(nilpotent2()), {0.5, 1.0});
  CHECK(rep2.max_residual > 1e-3);
  CHECK(!rep2.reduces_to_scalar_candidate);
}

TEST_CASE("ad-condition cases") {
  for (int dim : {2, 3, 4}) {
    auto c1 = AdConditionCase::make(1, dim);
    CHECK(c1.conditions_hold());
    CHECK(max_abs(c1.A - c1.L) == 0.0);
    // H = i(J - A x)
    CHECK(max_abs(c1.H.coeff(0) - Complex(0.0, 1.0) * c1.J) == 0.0);
    CHECK(max_abs(c1.H.coeff(1) + Complex(0.0, 1.0) * c1.A) == 0.0);

    auto c2 = AdConditionCase::make(2, dim);
    CHECK(c2.conditions_hold());
  }
  // N = 3 case 2: A = L - L^2 for unit superdiagonal entries
  auto c2 = AdConditionCase::make(2, 3);
  Matrix ref = c2.L - c2.L * c2.L;
  CHECK(max_abs(c2.A - ref) == 0.0);
  CHECK_THROWS_AS(AdConditionCase::make(3, 2), ConfigError);
  CHECK_THROWS_AS(AdConditionCase::make(1, 2, {Complex(0.0, 0.0)}), ConfigError);
}

TEST_CASE("the factorization mate is conjugation of the constant by T") {
  // H(x) = T(x) (iJ) T(x)^{-1} for both structured cases
  for (int variant : {1, 2}) {
    for (int dim : {2, 3}) {
      AdConditionCase cs = AdConditionCase::make(variant, dim);
      WeightSpec spec = cs.weight();
      for (double x : {-0.8, 0.4, 1.6}) {
        Matrix t = spec.t_eval(x);
        Matrix ref = t * (Complex(0.0, 1.0) * cs.J) * t.inverse();
        CHECK(max_abs(cs.H.eval(x) - ref) < 1e-12);
      }
    }
  }
}

TEST_CASE("custom weights interpolate the tabulated factor") {
  // tabulate T for the scalar Gaussian on a fine grid
  WeightSpec sh = WeightSpec::scalar_hermite();
  std::vector<double> grid;
  std::vector<Matrix> values;
  for (int i = 0; i <= 4000; ++i) {
    double x = -10.0 + 20.0 * i / 4000.0;
    grid.push_back(x);
    values.push_back(sh.t_eval(x));
  }
  WeightSpec custom = WeightSpec::custom(sh.g_poly(), grid, values);
  CHECK(std::abs(custom.weight_eval(0.37)(0, 0).real() - std::exp(-0.37 * 0.37)) < 1e-5);
  CHECK_THROWS_AS(custom.weight_eval(11.0), std::out_of_range);
  CHECK_THROWS_AS(custom.t_eval(Complex(0.0, 1.0)), std::domain_error);
}

TEST_CASE("family parsing and defaults") {
  CHECK(family_from_name("hermite-a") == WeightFamily::HermiteA);
  CHECK_THROWS_AS(family_from_name("nope"), ConfigError);
  CHECK(WeightSpec::default_for(WeightFamily::ScalarHermite, 1).dim() == 1);
  CHECK(WeightSpec::default_for(WeightFamily::HermiteA, 1).dim() == 1);  // zero matrix
  CHECK_THROWS_AS(WeightSpec::default_for(WeightFamily::PolyU, 3), ConfigError);
  CHECK_THROWS_AS(WeightSpec::poly_u(nilpotent2(), nilpotent2(), 4), ConfigError);
}
