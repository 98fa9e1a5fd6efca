#include <doctest.h>

#include "moprl/moments.hpp"

#include <cmath>

using namespace moprl;

namespace {

double gauss_moment(int k) {
  // int x^k e^{-x^2} dx: 0 for odd k, Gamma((k+1)/2) for even k
  if (k % 2 == 1) return 0.0;
  return std::tgamma((k + 1) / 2.0);
}

Matrix nilp(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) a(k, k + 1) = 1.0;
  return a;
}

// Independent oracle for e^{-x^2} e^{Ax} e^{A*x} with nilpotent A:
// mu_k = sum_{p,q<N} A^p (A^*)^q g_{k+p+q} / (p! q!)
Matrix hermite_a_moment_oracle(const Matrix& a, int k) {
  const int n = static_cast<int>(a.rows());
  Matrix out = Matrix::Zero(n, n);
  Matrix ap = Matrix::Identity(n, n);
  double pfac = 1.0;
  for (int p = 0; p < n; ++p) {
    Matrix aq = Matrix::Identity(n, n);
    double qfac = 1.0;
    for (int q = 0; q < n; ++q) {
      out += gauss_moment(k + p + q) / (pfac * qfac) * (ap * aq.adjoint());
      aq = aq * a;
      qfac *= (q + 1);
    }
    ap = ap * a;
    pfac *= (p + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar Hermite moments") {
  MomentTable t = compute_moments(WeightSpec::scalar_hermite(), 8, 1e-12);
  CHECK(std::abs(t.mu(0)(0, 0).real() - std::sqrt(M_PI)) < 1e-12);
  CHECK(max_abs(t.mu(1)) < 1e-12);
  CHECK(std::abs(t.mu(2)(0, 0).real() - std::sqrt(M_PI) / 2.0) < 1e-12);
  CHECK(std::abs(t.mu(8)(0, 0).real() - gauss_moment(8)) < 1e-11);
}

TEST_CASE("2x2 nilpotent moments against the expansion oracle") {
  Matrix a = nilp(2);
  MomentTable t = compute_moments(WeightSpec::hermite_a(a), 6, 1e-12);
  double rp = std::sqrt(M_PI);
  Matrix mu0(2, 2), mu1(2, 2), mu2(2, 2);
  mu0 << 1.5 * rp, 0.0, 0.0, rp;
  mu1 << 0.0, rp / 2.0, rp / 2.0, 0.0;
  mu2 << 1.25 * rp, 0.0, 0.0, rp / 2.0;
  CHECK(max_abs(t.mu(0) - mu0) < 1e-12);
  CHECK(max_abs(t.mu(1) - mu1) < 1e-12);
  CHECK(max_abs(t.mu(2) - mu2) < 1e-12);
  for (int k = 0; k <= 6; ++k)
    CHECK(max_abs(t.mu(k) - hermite_a_moment_oracle(a, k)) < 1e-11);
}

TEST_CASE("3x3 nilpotent moments against the expansion oracle") {
  Matrix a = nilp(3);
  MomentTable t = compute_moments(WeightSpec::hermite_a(a), 7, 1e-12);
  for (int k = 0; k <= 7; ++k)
    CHECK(max_abs(t.mu(k) - hermite_a_moment_oracle(a, k)) < 1e-10);
}

TEST_CASE("quartic weight zeroth moment") {
  MomentTable t = compute_moments(WeightSpec::freud_b(Matrix::Zero(1, 1)), 4, 1e-12);
  CHECK(std::abs(t.mu(0)(0, 0).real() - std::tgamma(0.25) / 2.0) < 1e-10);
  CHECK(std::abs(t.mu(2)(0, 0).real() - std::tgamma(0.75) / 2.0) < 1e-10);
}

TEST_CASE("moment table invariants") {
  for (auto fam : {WeightFamily::HermiteB, WeightFamily::FreudB}) {
    MomentTable t = compute_moments(WeightSpec::default_for(fam, 2), 9, 1e-12);
    for (int k = 0; k <= t.max_order; ++k) {
      CHECK(max_abs(t.mu(k) - t.mu(k).adjoint()) <= 10.0 * t.tol);
      if (k % 2 == 1) CHECK(max_abs(t.mu(k)) <= 10.0 * t.tol);  // parity
    }
    CHECK(is_positive_definite(t.mu(0), 1e-10));
  }
}

TEST_CASE("moment computation is deterministic") {
  WeightSpec spec = WeightSpec::default_for(WeightFamily::HermiteA, 2);
  MomentTable t1 = compute_moments(spec, 6, 1e-12);
  MomentTable t2 = compute_moments(spec, 6, 1e-12);
  CHECK(t1.truncation_radius == t2.truncation_radius);
  CHECK(t1.node_count == t2.node_count);
  for (int k = 0; k <= 6; ++k) CHECK(max_abs(t1.mu(k) - t2.mu(k)) == 0.0);
}

TEST_CASE("results do not depend on the worker thread count") {
  WeightSpec spec = WeightSpec::default_for(WeightFamily::HermiteB, 2);
  setenv("MOPRL_THREADS", "1", 1);
  MomentTable serial = compute_moments(spec, 5, 1e-12);
  setenv("MOPRL_THREADS", "4", 1);
  MomentTable parallel = compute_moments(spec, 5, 1e-12);
  unsetenv("MOPRL_THREADS");
  for (int k = 0; k <= 5; ++k) CHECK(max_abs(serial.mu(k) - parallel.mu(k)) == 0.0);
}

TEST_CASE("inadmissible parameters are reported, not silently integrated") {
  // 2B - I = I, so the factor grows like e^{x^2} against the e^{-x^2} envelope
  WeightSpec bad = WeightSpec::hermite_b(Matrix::Identity(1, 1));
  CHECK_THROWS_AS(compute_moments(bad, 2, 1e-8), NonConvergentError);
}

TEST_CASE("block Hankel assembly") {
  MomentTable t = compute_moments(WeightSpec::scalar_hermite(), 4, 1e-12);
  BlockHankel h0 = block_hankel(t, 0);
  CHECK(max_abs(h0.blocks[0][0] - t.mu(0)) == 0.0);

  BlockHankel h1 = block_hankel(t, 1);
  Matrix full = h1.assemble();
  CHECK(std::abs(full(0, 0).real() - std::sqrt(M_PI)) < 1e-12);
  CHECK(std::abs(full(0, 1).real()) < 1e-12);
  CHECK(std::abs(full(1, 1).real() - std::sqrt(M_PI) / 2.0) < 1e-12);
  CHECK(hankel_condition(h1) < 10.0);

  MomentTable ta = compute_moments(WeightSpec::default_for(WeightFamily::HermiteA, 2), 4, 1e-12);
  BlockHankel h2 = block_hankel(ta, 2);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) CHECK(max_abs(h2.blocks[i][j] - ta.mu(i + j)) == 0.0);

  CHECK_THROWS_AS(block_hankel(t, 3), std::out_of_range);
}
