#include "moprl/json_io.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using moprl::Complex;
using moprl::Json;
using moprl::Matrix;

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

Json py_to_json(py::handle h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) return h.cast<long long>();
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::dict>(h)) {
    Json out = Json::object();
    for (auto item : h.cast<py::dict>())
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    return out;
  }
  if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
    Json out = Json::array();
    for (auto item : h.cast<py::sequence>()) out.push_back(py_to_json(item));
    return out;
  }
  throw py::type_error("unsupported value in spec JSON");
}

using Rows = std::vector<std::vector<Complex>>;

Rows matrix_to_rows(const Matrix& m) {
  Rows rows(m.rows(), std::vector<Complex>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

Matrix rows_to_matrix(const Rows& rows) {
  if (rows.empty()) throw py::value_error("matrix must be non-empty");
  Matrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw py::value_error("ragged matrix");
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

moprl::WeightSpec spec_from_py(py::handle spec) {
  if (py::isinstance<py::str>(spec))
    return moprl::weight_spec_from_json(Json::parse(spec.cast<std::string>()));
  return moprl::weight_spec_from_json(py_to_json(spec));
}

/// Thin immutable handle over a built ledger.
class Ledger {
 public:
  Ledger(py::handle spec, int n_max, double tol)
      : seq_(moprl::build_sequence(spec_from_py(spec), n_max, tol)) {}

  int n_max() const { return seq_.n_max; }
  int dim() const { return seq_.spec.dim(); }
  Rows alpha(int n) const { return matrix_to_rows(seq_.alpha.at(n)); }
  Rows beta(int n) const { return matrix_to_rows(seq_.beta.at(n)); }
  Rows gamma(int n) const { return matrix_to_rows(seq_.gamma.at(n)); }
  std::vector<Rows> monic(int n) const {
    std::vector<Rows> out;
    for (const auto& c : seq_.monic.at(n).coeffs()) out.push_back(matrix_to_rows(c));
    return out;
  }
  Rows cd_kernel(int n, double x, double y) const {
    return matrix_to_rows(moprl::cd_kernel_sum(seq_, n, x, y));
  }
  Rows rh_solution(int n, Complex z) const {
    return matrix_to_rows(moprl::assemble_rh(seq_, n, z));
  }
  py::object ladder(int n) const {
    return json_to_py(moprl::ladder_to_json(moprl::ladder_coeffs(seq_, n, seq_.spec.g_poly())));
  }
  Rows frame(int n, Complex z) const {
    return matrix_to_rows(moprl::f_matrix(seq_, n, z, seq_.spec.g_poly()));
  }
  py::object to_dict() const { return json_to_py(moprl::ledger_to_json(seq_)); }

 private:
  moprl::MopSequence seq_;
};

}  // namespace

PYBIND11_MODULE(_moprl, m) {
  m.doc() = "matrix orthogonal polynomial engine (C++ core)";

  m.def("expm", [](const Rows& a) { return matrix_to_rows(moprl::expm(rows_to_matrix(a))); },
        py::arg("matrix"), "Matrix exponential (exact for nilpotent arguments).");

  m.def("poly_u_validate",
        [](const Rows& a1, const Rows& a2) {
          return moprl::poly_u_validate(rows_to_matrix(a1), rows_to_matrix(a2));
        },
        py::arg("a1"), py::arg("a2"),
        "Check the algebraic constraints on a degree-2 unit-determinant factor.");

  m.def("weight_eval",
        [](py::handle spec, double x) { return matrix_to_rows(spec_from_py(spec).weight_eval(x)); },
        py::arg("spec"), py::arg("x"), "Evaluate the weight matrix W(x) = T(x) T*(x).");

  m.def("t_eval",
        [](py::handle spec, Complex z) { return matrix_to_rows(spec_from_py(spec).t_eval(z)); },
        py::arg("spec"), py::arg("z"), "Entire extension of the weight factor T.");

  m.def("g_poly",
        [](py::handle spec) {
          moprl::WeightSpec s = spec_from_py(spec);
          std::vector<Rows> out;
          for (const auto& c : s.g_poly().coeffs()) out.push_back(matrix_to_rows(c));
          return out;
        },
        py::arg("spec"), "Coefficients (ascending powers) of G with T' = G T.");

  m.def("compute_moments",
        [](py::handle spec, int max_order, double tol) {
          return json_to_py(
              moprl::moment_table_to_json(moprl::compute_moments(spec_from_py(spec), max_order, tol)));
        },
        py::arg("spec"), py::arg("max_order"), py::arg("tol") = 1e-12);

  m.def("build_ledger",
        [](py::handle spec, int n_max, double tol) {
          return json_to_py(
              moprl::ledger_to_json(moprl::build_sequence(spec_from_py(spec), n_max, tol)));
        },
        py::arg("spec"), py::arg("n_max"), py::arg("tol") = 1e-12,
        "Build the full ledger and return it in the JSON export layout.");

  m.def("verify",
        [](py::handle spec, int n_max, double tol, unsigned long long seed,
           const std::vector<std::string>& suite) {
          moprl::VerifyOptions opt;
          opt.n_max = n_max;
          opt.tol = tol;
          opt.seed = seed;
          opt.suite = suite;
          return json_to_py(moprl::report_to_json(moprl::run_suite(spec_from_py(spec), opt)));
        },
        py::arg("spec"), py::arg("n_max") = 6, py::arg("tol") = 1e-12, py::arg("seed") = 0,
        py::arg("suite") = std::vector<std::string>{},
        "Run the identity suite and return the report.");

  m.def("known_checks", [] { return moprl::known_checks(); });

  m.def("commutativity_probe",
        [](py::handle spec, const std::vector<double>& grid) {
          auto rep = moprl::commutativity_probe(spec_from_py(spec), grid);
          py::dict out;
          out["max_residual"] = rep.max_residual;
          out["reduces_to_scalar_candidate"] = rep.reduces_to_scalar_candidate;
          return out;
        },
        py::arg("spec"), py::arg("grid"),
        "Max commutator norm of W over grid pairs; flags scalar-reducible candidates.");

  py::class_<Ledger>(m, "Ledger")
      .def(py::init<py::handle, int, double>(), py::arg("spec"), py::arg("n_max"),
           py::arg("tol") = 1e-12)
      .def_property_readonly("n_max", &Ledger::n_max)
      .def_property_readonly("dim", &Ledger::dim)
      .def("alpha", &Ledger::alpha, py::arg("n"))
      .def("beta", &Ledger::beta, py::arg("n"))
      .def("gamma", &Ledger::gamma, py::arg("n"))
      .def("monic", &Ledger::monic, py::arg("n"), "Coefficients of the monic polynomial.")
      .def("cd_kernel", &Ledger::cd_kernel, py::arg("n"), py::arg("x"), py::arg("y"))
      .def("rh_solution", &Ledger::rh_solution, py::arg("n"), py::arg("z"))
      .def("ladder", &Ledger::ladder, py::arg("n"),
           "Ladder coefficients for the weight's own source polynomial.")
      .def("frame", &Ledger::frame, py::arg("n"), py::arg("z"),
           "2N x 2N first-order frame matrix at z.")
      .def("to_dict", &Ledger::to_dict);

  py::register_exception<moprl::ConfigError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<moprl::NonConvergentError>(m, "NonConvergentError", PyExc_ArithmeticError);
  py::register_exception<moprl::IllConditionedError>(m, "IllConditionedError",
                                                     PyExc_ArithmeticError);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
