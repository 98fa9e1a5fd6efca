#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace moprl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

constexpr double kHermitianTol = 1e-12;  // absolute, scaled by max entry magnitude

/// Raised when a quadrature or iteration fails to stabilize within budget.
class NonConvergentError : public std::runtime_error {
 public:
  explicit NonConvergentError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a linear system is too ill-conditioned to solve reliably.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double cond)
      : std::runtime_error(what + " (condition estimate " + std::to_string(cond) + ")"),
        condition(cond) {}
  double condition;
};

/// Raised on malformed user input (JSON files, CLI parameters).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

Matrix identity(int dim);
Matrix zero(int dim);

/// Largest entry magnitude; 0 for empty matrices.
double max_abs(const Matrix& m);

bool all_finite(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_unitary(const Matrix& m, double tol = kHermitianTol);

/// Hermitian positive definite: Hermitian up to `tol` and smallest
/// eigenvalue of the Hermitian part strictly positive.
bool is_positive_definite(const Matrix& m, double tol = kHermitianTol);

double smallest_eigenvalue(const Matrix& hermitian);

/// Hermitian PSD square root. Throws if `m` is not Hermitian positive
/// semidefinite (eigenvalues below -tol*scale).
Matrix hermitian_sqrt(const Matrix& m, double tol = kHermitianTol);

/// Condition number from the full SVD (fine at the dimensions used here).
double condition_estimate(const Matrix& m);

struct BlockSolveResult {
  std::vector<Matrix> x;  // block column solution
  double condition = 0.0;
  double residual = 0.0;  // ||M x - rhs||_max
};

/// Solves M x = rhs where M is a square grid of N x N blocks and rhs a block
/// column. Refuses systems with condition estimate above `refuse_above`.
/// The returned residual satisfies
///   ||M x - rhs||_max <= kSolveResidualFactor * cond(M) * eps * ||rhs||_max
/// for well-posed systems.
constexpr double kSolveResidualFactor = 100.0;
BlockSolveResult solve_block_system(const std::vector<std::vector<Matrix>>& m,
                                    const std::vector<Matrix>& rhs,
                                    double refuse_above = 1e13);

/// Kahan-compensated accumulator for matrix sums; the reduction order of
/// add() calls fixes the result bit-for-bit.
class KahanMatrixSum {
 public:
  explicit KahanMatrixSum(int dim) : sum_(Matrix::Zero(dim, dim)), comp_(Matrix::Zero(dim, dim)) {}
  void add(const Matrix& term) {
    Matrix y = term - comp_;
    Matrix t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  const Matrix& value() const { return sum_; }

 private:
  Matrix sum_;
  Matrix comp_;
};

}  // namespace moprl
