#include "moprl/json_io.hpp"

namespace moprl {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw ConfigError("matrix: dim must be positive");
    const Json& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
      throw ConfigError("matrix: entries must hold dim rows");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const Json& row = rows.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw ConfigError("matrix: each row must hold dim entries");
      for (int k = 0; k < dim; ++k) {
        const Json& e = row.at(k);
        if (!e.is_array() || e.size() != 2)
          throw ConfigError("matrix: entries must be [re, im] pairs");
        m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    if (!all_finite(m)) throw ConfigError("matrix: non-finite entries");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("matrix: malformed JSON (") + e.what() + ")");
  }
}

Json poly_to_json(const MatrixPolynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(matrix_to_json(c));
  return Json{{"dim", p.dim()}, {"coeffs", std::move(coeffs)}};
}

MatrixPolynomial poly_from_json(const Json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    const Json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.empty())
      throw ConfigError("polynomial: coeffs must be a non-empty array");
    std::vector<Matrix> cs;
    cs.reserve(coeffs.size());
    for (const auto& c : coeffs) cs.push_back(matrix_from_json(c));
    return MatrixPolynomial(dim, std::move(cs));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("polynomial: malformed JSON (") + e.what() + ")");
  }
}

WeightSpec weight_spec_from_json(const Json& j) {
  try {
    std::string fam = j.at("family").get<std::string>();
    WeightFamily f = family_from_name(fam);
    switch (f) {
      case WeightFamily::ScalarHermite:
        return WeightSpec::scalar_hermite();
      case WeightFamily::HermiteA:
        if (j.contains("A")) return WeightSpec::hermite_a(matrix_from_json(j.at("A")));
        break;
      case WeightFamily::HermiteB:
        if (j.contains("B")) return WeightSpec::hermite_b(matrix_from_json(j.at("B")));
        break;
      case WeightFamily::FreudA:
        if (j.contains("A")) return WeightSpec::freud_a(matrix_from_json(j.at("A")));
        break;
      case WeightFamily::FreudB:
        if (j.contains("B")) return WeightSpec::freud_b(matrix_from_json(j.at("B")));
        break;
      case WeightFamily::PolyU:
        if (j.contains("A1") && j.contains("A2"))
          return WeightSpec::poly_u(matrix_from_json(j.at("A1")), matrix_from_json(j.at("A2")),
                                    j.value("q_degree", 2));
        break;
      case WeightFamily::Custom: {
        MatrixPolynomial g = poly_from_json(j.at("G"));
        const Json& table = j.at("T_table");
        std::vector<double> grid = table.at("grid").get<std::vector<double>>();
        std::vector<Matrix> values;
        for (const auto& v : table.at("values")) values.push_back(matrix_from_json(v));
        return WeightSpec::custom(std::move(g), std::move(grid), std::move(values));
      }
    }
    // Parameter matrices absent: fall back to the family defaults.
    return WeightSpec::default_for(f, j.value("dim", 2));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("weight spec: malformed JSON (") + e.what() + ")");
  }
}

Json weight_spec_to_json(const WeightSpec& spec) {
  Json j{{"family", family_name(spec.family())}, {"dim", spec.dim()}};
  switch (spec.family()) {
    case WeightFamily::ScalarHermite:
      break;
    case WeightFamily::HermiteA:
    case WeightFamily::FreudA:
      j["A"] = matrix_to_json(spec.param_a());
      break;
    case WeightFamily::HermiteB:
    case WeightFamily::FreudB:
      j["B"] = matrix_to_json(spec.param_b());
      break;
    case WeightFamily::PolyU:
      j["A1"] = matrix_to_json(spec.param_a1());
      j["A2"] = matrix_to_json(spec.param_a2());
      j["q_degree"] = 2;
      break;
    case WeightFamily::Custom: {
      j["G"] = poly_to_json(spec.g_poly());
      Json grid = Json::array(), values = Json::array();
      for (double x : spec.custom_grid()) grid.push_back(x);
      for (const auto& v : spec.custom_values()) values.push_back(matrix_to_json(v));
      j["T_table"] = Json{{"grid", std::move(grid)}, {"values", std::move(values)}};
      break;
    }
  }
  j["description"] = spec.description();
  return j;
}

Json moment_table_to_json(const MomentTable& t) {
  Json moments = Json::array();
  for (const auto& m : t.moments) moments.push_back(matrix_to_json(m));
  return Json{{"dim", t.dim},
              {"max_order", t.max_order},
              {"tol", t.tol},
              {"truncation_radius", t.truncation_radius},
              {"node_count", t.node_count},
              {"moments", std::move(moments)}};
}

Json ladder_to_json(const LadderCoeffs& lc) {
  return Json{{"n", lc.n},
              {"source", poly_to_json(lc.source)},
              {"A_poly", poly_to_json(lc.A_poly)},
              {"B_poly", poly_to_json(lc.B_poly)}};
}

Json ledger_to_json(const MopSequence& seq) {
  Json j;
  j["spec"] = weight_spec_to_json(seq.spec);
  j["n_max"] = seq.n_max;
  j["quadrature"] = Json{{"tol", seq.moments.tol},
                         {"truncation_radius", seq.moments.truncation_radius},
                         {"node_count", seq.moments.node_count},
                         {"max_order", seq.moments.max_order}};

  Json monic = Json::array();
  for (const auto& p : seq.monic) monic.push_back(poly_to_json(p));
  j["monic"] = std::move(monic);

  Json a = Json::array();
  for (const auto& row : seq.a) {
    Json r = Json::array();
    for (const auto& m : row) r.push_back(matrix_to_json(m));
    a.push_back(std::move(r));
  }
  j["a"] = std::move(a);

  auto dump_list = [](const std::vector<Matrix>& v) {
    Json out = Json::array();
    for (const auto& m : v) out.push_back(matrix_to_json(m));
    return out;
  };
  j["gamma"] = dump_list(seq.gamma);
  j["gamma_inv"] = dump_list(seq.gram);
  j["kappa"] = dump_list(seq.kappa);
  j["alpha"] = dump_list(seq.alpha);
  Json beta = Json::array();
  for (int n = 1; n <= seq.n_max; ++n) beta.push_back(matrix_to_json(seq.beta[n]));
  j["beta"] = std::move(beta);

  Json b = Json::array();
  for (int n = 0; n <= seq.n_max; ++n) {
    Json row_entries = Json::array();
    for (const auto& m : seq.b_rows[static_cast<size_t>(n)]) row_entries.push_back(matrix_to_json(m));
    b.push_back(Json{{"n", n}, {"k_min", n}, {"k_max", seq.b_hi[static_cast<size_t>(n)]},
                     {"entries", std::move(row_entries)}});
  }
  j["b"] = std::move(b);

  Json q = Json::array();
  for (const auto& p : seq.second_kind) q.push_back(poly_to_json(p));
  j["second_kind"] = std::move(q);

  j["hankel_cond"] = seq.hankel_cond;
  j["hankel_warning"] = seq.hankel_warning;
  return j;
}

Json report_to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json e{{"name", c.name},
           {"anchor", c.anchor},
           {"residual", c.residual},
           {"tol", c.tol},
           {"pass", c.pass}};
    if (c.samples > 0) e["samples"] = c.samples;
    if (c.skipped) {
      e["skipped"] = true;
      e["skip_reason"] = c.skip_reason;
    }
    checks.push_back(std::move(e));
  }
  return Json{{"family", rep.family},     {"description", rep.description},
              {"dim", rep.dim},           {"n_max", rep.n_max},
              {"quad_tol", rep.quad_tol}, {"seed", rep.seed},
              {"checks", std::move(checks)}, {"all_pass", rep.all_pass()}};
}

}  // namespace moprl
