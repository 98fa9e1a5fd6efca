#pragma once

#include "moprl/matrix.hpp"

#include <functional>

namespace moprl {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on the Legendre recurrence; cached per order.
const GaussRule& gauss_legendre(int order);

struct QuadratureResult {
  std::vector<Matrix> values;
  long node_count = 0;
  int panels = 0;
};

/// Integrates a family of matrix integrands over [-radius, radius] with
/// composite Gauss-Legendre panels, doubling the panel count until two
/// successive estimates agree to `tol` (absolute, per family member, scaled
/// by max(1, |value|)). Panels may be evaluated concurrently, but the
/// reduction is always left-to-right over panel index, so results are
/// bit-deterministic for a fixed panel count.
///
/// Throws NonConvergentError when the budget is exhausted.
QuadratureResult integrate_family(
    const std::function<std::vector<Matrix>(double)>& f, int family_size, int dim, double radius,
    double tol, int initial_panels = 16, int max_panels = 1 << 14);

/// Number of worker threads for panel evaluation: MOPRL_THREADS if set,
/// otherwise hardware concurrency capped at 8.
int worker_threads();

}  // namespace moprl
