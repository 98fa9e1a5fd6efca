#pragma once

#include "moprl/verify.hpp"

#include <json.hpp>

namespace moprl {

using Json = nlohmann::ordered_json;

// Matrix wire format, used repo-wide:
//   {"dim": N, "entries": [[[re, im], ...], ...]}   (row-major)
// Polynomials: {"dim": N, "coeffs": [matrix, ...]}  (ascending powers)

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json poly_to_json(const MatrixPolynomial& p);
MatrixPolynomial poly_from_json(const Json& j);

/// Weight spec files: {"family": "hermite-a", "A": <matrix>} and siblings;
/// "custom" takes {"G": <poly>, "T_table": {"grid": [...], "values": [...]}}.
/// A bare {"dim": N} (or nothing) selects the family defaults.
WeightSpec weight_spec_from_json(const Json& j);
Json weight_spec_to_json(const WeightSpec& spec);

Json moment_table_to_json(const MomentTable& t);

/// Ladder coefficients as polynomial JSON.
Json ladder_to_json(const LadderCoeffs& lc);

/// Full ledger export: coefficients, recurrence data, moment provenance and
/// conditioning diagnostics. This is the golden format for regression tests.
Json ledger_to_json(const MopSequence& seq);

Json report_to_json(const VerificationReport& rep);

}  // namespace moprl
