#include "moprl/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace moprl {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }
Matrix zero(int dim) { return Matrix::Zero(dim, dim); }

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= tol * scale;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix g = m.adjoint() * m;
  double scale = std::max(1.0, max_abs(g));
  return max_abs(g - Matrix::Identity(m.rows(), m.cols())) <= tol * scale;
}

double smallest_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_positive_definite(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  Matrix h = 0.5 * (m + m.adjoint());
  return smallest_eigenvalue(h) > 0.0;
}

Matrix hermitian_sqrt(const Matrix& m, double tol) {
  double scale = std::max(1.0, max_abs(m));
  if (!is_hermitian(m, tol)) throw std::invalid_argument("hermitian_sqrt: matrix is not Hermitian");
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol * scale)
      throw std::invalid_argument("hermitian_sqrt: matrix has a negative eigenvalue");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double condition_estimate(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

BlockSolveResult solve_block_system(const std::vector<std::vector<Matrix>>& m,
                                    const std::vector<Matrix>& rhs, double refuse_above) {
  const int nb = static_cast<int>(m.size());
  if (nb == 0) throw std::invalid_argument("solve_block_system: empty system");
  const int d = static_cast<int>(m[0][0].rows());
  Matrix big(nb * d, nb * d);
  for (int i = 0; i < nb; ++i) {
    if (static_cast<int>(m[i].size()) != nb)
      throw std::invalid_argument("solve_block_system: ragged block grid");
    for (int j = 0; j < nb; ++j) big.block(i * d, j * d, d, d) = m[i][j];
  }
  Matrix b(nb * d, d);
  if (static_cast<int>(rhs.size()) != nb)
    throw std::invalid_argument("solve_block_system: rhs size mismatch");
  for (int i = 0; i < nb; ++i) b.block(i * d, 0, d, d) = rhs[i];

  BlockSolveResult out;
  out.condition = condition_estimate(big);
  if (!std::isfinite(out.condition) || out.condition > refuse_above)
    throw IllConditionedError("solve_block_system: system is singular or near-singular",
                              out.condition);

  Matrix x = big.fullPivLu().solve(b);
  out.residual = max_abs(big * x - b);
  out.x.reserve(nb);
  for (int i = 0; i < nb; ++i) out.x.push_back(x.block(i * d, 0, d, d));
  return out;
}

}  // namespace moprl
