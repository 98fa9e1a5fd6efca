#pragma once

#include "moprl/weights.hpp"

namespace moprl {

/// Cached table of weight moments mu_k = int x^k W(x) dx over the real line,
/// with the quadrature provenance needed to reproduce it. Immutable once built.
struct MomentTable {
  int dim = 0;
  int max_order = 0;
  std::vector<Matrix> moments;  // mu_0 .. mu_max_order
  double truncation_radius = 0.0;
  double tol = 0.0;
  long node_count = 0;

  const Matrix& mu(int k) const {
    if (k < 0 || k > max_order) throw std::out_of_range("MomentTable: moment order out of range");
    return moments[static_cast<size_t>(k)];
  }
};

/// Adaptive moment computation: composite Gauss-Legendre panels on [-R, R],
/// panel count doubled until stable, R doubled until enlarging it no longer
/// moves any moment by more than tol. Throws NonConvergentError for weights
/// whose moments do not settle within budget (e.g. inadmissible parameters).
MomentTable compute_moments(const WeightSpec& spec, int max_order, double tol);

struct BlockHankel {
  int n = 0;  // grid is (n+1) x (n+1) blocks
  std::vector<std::vector<Matrix>> blocks;  // blocks[i][j] = mu_{i+j}

  Matrix assemble() const;
};

BlockHankel block_hankel(const MomentTable& table, int n);

/// Condition estimate of the assembled Hankel matrix. Callers should warn
/// above kHankelWarn and refuse above kHankelRefuse.
double hankel_condition(const BlockHankel& h);

constexpr double kHankelWarn = 1e10;
constexpr double kHankelRefuse = 1e13;

}  // namespace moprl
