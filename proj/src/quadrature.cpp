#include "moprl/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <mutex>
#include <thread>

namespace moprl {

namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

int worker_threads() {
  if (const char* env = std::getenv("MOPRL_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
}

namespace {

constexpr int kNodesPerPanel = 24;

struct FixedPassResult {
  std::vector<Matrix> values;
  std::vector<double> abs_mass;  // integral of |f| per member, for error scaling
};

// One pass over [-radius, radius] with `half_panels` panels on [0, radius],
// each node evaluated at +-x together. The pairing makes odd integrands of
// even weights cancel exactly instead of leaving O(mass * eps) noise.
// Per-panel sums are stored and reduced left-to-right, so the result does not
// depend on the thread count.
FixedPassResult integrate_fixed(const std::function<std::vector<Matrix>(double)>& f,
                                int family_size, int dim, double radius, int half_panels) {
  const GaussRule& rule = gauss_legendre(kNodesPerPanel);
  const double h = radius / half_panels;

  struct PanelSum {
    std::vector<Matrix> v;
    std::vector<double> a;
  };
  std::vector<PanelSum> partial(half_panels);
  auto eval_panel = [&](int p) {
    double a = p * h;
    std::vector<KahanMatrixSum> acc(family_size, KahanMatrixSum(dim));
    std::vector<double> mass(family_size, 0.0);
    for (int q = 0; q < kNodesPerPanel; ++q) {
      double x = a + 0.5 * h * (rule.nodes[q] + 1.0);
      double w = 0.5 * h * rule.weights[q];
      std::vector<Matrix> plus = f(x);
      std::vector<Matrix> minus = f(-x);
      for (int m = 0; m < family_size; ++m) {
        acc[m].add(w * (plus[m] + minus[m]));
        mass[m] += w * (max_abs(plus[m]) + max_abs(minus[m]));
      }
    }
    PanelSum out;
    out.v.reserve(family_size);
    for (auto& k : acc) out.v.push_back(k.value());
    out.a = std::move(mass);
    return out;
  };

  int threads = std::min(worker_threads(), half_panels);
  if (threads <= 1) {
    for (int p = 0; p < half_panels; ++p) partial[p] = eval_panel(p);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      futs.push_back(std::async(std::launch::async, [&]() {
        for (int p = next.fetch_add(1); p < half_panels; p = next.fetch_add(1))
          partial[p] = eval_panel(p);
      }));
    }
    for (auto& fu : futs) fu.get();
  }

  FixedPassResult out;
  std::vector<KahanMatrixSum> total(family_size, KahanMatrixSum(dim));
  out.abs_mass.assign(family_size, 0.0);
  for (int p = 0; p < half_panels; ++p)
    for (int m = 0; m < family_size; ++m) {
      total[m].add(partial[p].v[m]);
      out.abs_mass[m] += partial[p].a[m];
    }
  out.values.reserve(family_size);
  for (auto& k : total) out.values.push_back(k.value());
  return out;
}

bool family_finite(const std::vector<Matrix>& values) {
  for (const auto& v : values)
    if (!all_finite(v)) return false;
  return true;
}

}  // namespace

QuadratureResult integrate_family(const std::function<std::vector<Matrix>(double)>& f,
                                  int family_size, int dim, double radius, double tol,
                                  int initial_panels, int max_panels) {
  const int initial_half = std::max(1, initial_panels / 2);
  const int max_half = std::max(initial_half, max_panels / 2);
  FixedPassResult prev = integrate_fixed(f, family_size, dim, radius, initial_half);
  for (int half = 2 * initial_half; half <= max_half; half *= 2) {
    FixedPassResult cur = integrate_fixed(f, family_size, dim, radius, half);
    if (!family_finite(cur.values))
      throw NonConvergentError("quadrature produced non-finite values");
    double err = 0.0;
    for (int m = 0; m < family_size; ++m) {
      double scale = std::max({1.0, max_abs(cur.values[m]), cur.abs_mass[m]});
      err = std::max(err, max_abs(cur.values[m] - prev.values[m]) / scale);
    }
    if (err < tol / 4.0) {
      QuadratureResult res;
      res.values = std::move(cur.values);
      res.panels = 2 * half;
      res.node_count = static_cast<long>(half) * 3 * kNodesPerPanel;  // this pass + previous
      return res;
    }
    prev = std::move(cur);
  }
  throw NonConvergentError("quadrature failed to stabilize within the panel budget");
}

}  // namespace moprl
