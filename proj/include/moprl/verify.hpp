#pragma once

#include "moprl/ladder.hpp"

#include <random>

namespace moprl {

struct CheckResult {
  std::string name;    // suite key this entry belongs to
  std::string anchor;  // stable identifier of the identity being checked
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string skip_reason;
  int samples = 0;
};

struct VerificationReport {
  std::string family;
  std::string description;
  int dim = 0;
  int n_max = 0;
  double quad_tol = 0.0;
  unsigned long long seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  double max_residual() const;
};

struct VerifyOptions {
  int n_max = 6;
  double tol = 1e-12;  // quadrature tolerance
  unsigned long long seed = 0;
  std::vector<std::string> suite;  // empty means every registered check
};

/// Registered suite keys, in report order.
const std::vector<std::string>& known_checks();

/// Runs the requested checks against a freshly built ledger. Unknown suite
/// names raise ConfigError before any computation. Checks that do not apply
/// to the given weight family appear as skipped entries with a reason.
VerificationReport run_suite(const WeightSpec& spec, const VerifyOptions& options);

/// Deterministic off-axis sample points: three fixed plus two drawn from the
/// seeded generator; draw() yields replacements when a point turns out to be
/// unusable (near-singular factor).
class SamplePool {
 public:
  explicit SamplePool(unsigned long long seed);
  const std::vector<Complex>& points() const { return pts_; }
  Complex draw();

 private:
  std::mt19937_64 rng_;
  std::vector<Complex> pts_;
};

}  // namespace moprl
