#include "moprl/moments.hpp"

#include "moprl/quadrature.hpp"

#include <cmath>

namespace moprl {

namespace {

// Smallest R with envelope * x^max_order below tol deep in the tail; solved
// by fixed-point iteration on x^q = margin*x + k ln x + ln(1/eps).
double base_radius(const WeightSpec& spec, int max_order, double tol) {
  const double eps_tail = std::max(tol * 1e-4, 1e-300);
  const double logs = std::log(1.0 / eps_tail);
  const double margin = spec.growth_margin();
  double x = spec.envelope_degree() == 2 ? 8.0 : 3.0;
  for (int it = 0; it < 64; ++it) {
    double rhs = margin * x + max_order * std::log(std::max(x, 2.0)) + logs;
    x = spec.envelope_degree() == 2 ? std::sqrt(rhs) : std::pow(rhs, 0.25);
  }
  return std::max(spec.envelope_degree() == 2 ? 8.0 : 3.0, x);
}

std::vector<Matrix> moments_at_radius(const WeightSpec& spec, int max_order, double tol,
                                      double radius, long* nodes) {
  const int dim = spec.dim();
  auto f = [&](double x) {
    std::vector<Matrix> out(static_cast<size_t>(max_order) + 1);
    Matrix w = spec.weight_eval(x);
    double xp = 1.0;
    for (int k = 0; k <= max_order; ++k) {
      out[static_cast<size_t>(k)] = xp * w;
      xp *= x;
    }
    return out;
  };
  QuadratureResult qr = integrate_family(f, max_order + 1, dim, radius, tol);
  if (nodes) *nodes += qr.node_count;
  return qr.values;
}

}  // namespace

MomentTable compute_moments(const WeightSpec& spec, int max_order, double tol) {
  if (max_order < 0) throw std::invalid_argument("compute_moments: max_order must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("compute_moments: tol must be positive");

  MomentTable table;
  table.dim = spec.dim();
  table.max_order = max_order;
  table.tol = tol;

  double radius = base_radius(spec, max_order, tol);
  if (spec.family() == WeightFamily::Custom) {
    // Tabulated weights cannot be probed beyond their grid.
    double extent = std::min(-spec.custom_grid().front(), spec.custom_grid().back());
    radius = std::min(radius, extent);
    table.truncation_radius = radius;
    table.moments = moments_at_radius(spec, max_order, tol, radius, &table.node_count);
    return table;
  }

  std::vector<Matrix> prev = moments_at_radius(spec, max_order, tol, radius, &table.node_count);
  const int max_radius_doublings = 6;
  for (int r = 0; r < max_radius_doublings; ++r) {
    std::vector<Matrix> cur =
        moments_at_radius(spec, max_order, tol, 2.0 * radius, &table.node_count);
    double err = 0.0;
    for (int k = 0; k <= max_order; ++k)
      err = std::max(err, max_abs(cur[static_cast<size_t>(k)] - prev[static_cast<size_t>(k)]) /
                              std::max(1.0, max_abs(cur[static_cast<size_t>(k)])));
    if (err <= tol / 4.0) {
      // Keep the doubled radius: its tail error is already below tolerance.
      table.truncation_radius = 2.0 * radius;
      table.moments = std::move(cur);
      if (!is_positive_definite(table.moments[0], 1e-10))
        throw NonConvergentError("compute_moments: mu_0 is not Hermitian positive definite");
      return table;
    }
    radius *= 2.0;
    prev = std::move(cur);
  }
  throw NonConvergentError(
      "compute_moments: moments did not stabilize under radius doubling; "
      "the weight parameters may be inadmissible");
}

Matrix BlockHankel::assemble() const {
  const int nb = n + 1;
  const int d = static_cast<int>(blocks[0][0].rows());
  Matrix big(nb * d, nb * d);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) big.block(i * d, j * d, d, d) = blocks[i][j];
  return big;
}

BlockHankel block_hankel(const MomentTable& table, int n) {
  if (2 * n > table.max_order)
    throw std::out_of_range("block_hankel: table does not hold moments up to order 2n");
  BlockHankel h;
  h.n = n;
  h.blocks.assign(n + 1, std::vector<Matrix>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) h.blocks[i][j] = table.mu(i + j);
  return h;
}

double hankel_condition(const BlockHankel& h) { return condition_estimate(h.assemble()); }

}  // namespace moprl
