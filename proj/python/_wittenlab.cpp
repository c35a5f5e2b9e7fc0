#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wittenlab/cli.hpp"
#include "wittenlab/cobordism.hpp"
#include "wittenlab/donaldson.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/manifold_io.hpp"

namespace py = pybind11;
using namespace wittenlab;

namespace {

LatticeVector to_vector(const std::vector<std::int64_t>& v) { return LatticeVector(v); }

std::vector<std::string> render(const Frame& f, const MultiPoly& p) {
  std::vector<std::string> out = f.legend();
  out.push_back(f.render(p));
  return out;
}

}  // namespace

PYBIND11_MODULE(_wittenlab, m) {
  m.doc() = "Exact Donaldson invariants from Seiberg-Witten data";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UndeterminedError>(m, "UndeterminedError", PyExc_ArithmeticError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  py::class_<FourManifold>(m, "FourManifold")
      .def_readonly("name", &FourManifold::name)
      .def_readonly("euler", &FourManifold::euler)
      .def_readonly("signature", &FourManifold::signature)
      .def_property_readonly("rank", [](const FourManifold& x) { return x.lattice.rank(); })
      .def_property_readonly("sw",
                             [](const FourManifold& x) {
                               std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> out;
                               for (const auto& [k, v] : x.sw) out.emplace_back(k.coords(), v);
                               return out;
                             })
      .def("invariants",
           [](const FourManifold& x) {
             const auto inv = derived_invariants(x);
             py::dict d;
             d["chi_h"] = inv.chi_h;
             d["c1_squared"] = inv.c1_squared;
             d["c"] = inv.c_defect;
             d["b_plus"] = x.lattice.signature().b_plus;
             d["simple_type"] = is_sw_simple_type(x);
             return d;
           })
      .def("to_json", [](const FourManifold& x) { return manifold_to_json(x).dump(); })
      .def("__eq__", [](const FourManifold& a, const FourManifold& b) { return a == b; });

  m.def("load_manifold", &load_manifold, py::arg("path"));
  m.def("manifold_from_json",
        [](const std::string& text) {
          const auto x = manifold_from_json(nlohmann::json::parse(text));
          require_valid(x);
          return x;
        },
        py::arg("text"));
  m.def("blow_up", py::overload_cast<const FourManifold&, int>(&blow_up), py::arg("x"), py::arg("times") = 1);
  m.def("is_useful", [](const FourManifold& x) { return is_useful(x).passed(); });

  m.def("donaldson",
        [](const FourManifold& x, const std::vector<std::int64_t>& w, std::int64_t delta, std::int64_t m) {
          const Frame f = basic_frame(x);
          return render(f, donaldson_closed_form(x, to_vector(w), delta, m, f));
        },
        py::arg("x"), py::arg("w"), py::arg("delta"), py::arg("m") = 0,
        "Legend lines followed by the rendered polynomial.");
  m.def("verify_witten",
        [](const FourManifold& x, const std::vector<std::int64_t>& w, unsigned max_degree) {
          return verify_witten_consistency(x, to_vector(w), max_degree).passed();
        },
        py::arg("x"), py::arg("w"), py::arg("max_degree") = 8);
  m.def("sw_poly",
        [](const FourManifold& x, const std::vector<std::int64_t>& w, unsigned i) {
          const Frame f = basic_frame(x);
          return render(f, sw_poly(x, to_vector(w), i, f));
        },
        py::arg("x"), py::arg("w"), py::arg("i"));

  m.def("high_degree_b",
        [](std::int64_t chi_h, std::int64_t n, std::int64_t x, std::int64_t y, std::int64_t m, std::int64_t i,
           std::int64_t j, std::int64_t k) { return high_degree_b(chi_h, n, x, y, m, i, j, k).str(); },
        py::arg("chi_h"), py::arg("n"), py::arg("x"), py::arg("y"), py::arg("m"), py::arg("i"), py::arg("j"),
        py::arg("k"), "High-degree coefficient as a 'p/q' string.");
  m.def("solve_coefficients",
        [](const FourManifold& x, int n, std::int64_t delta, std::int64_t m, std::int64_t xp, std::int64_t yp) {
          const auto s = high_degree_setup(x, n, xp, yp);
          const auto res = blowup_identity_solve(x, n, s.w_tilde, s.lambda, delta, m);
          py::dict d;
          d["tsv"] = res.solved.to_tsv();
          std::vector<std::string> und;
          for (const auto& key : res.undetermined) und.push_back(key.str());
          d["undetermined"] = und;
          d["routes_agree"] = res.lhs_routes_agree && res.rhs_routes_agree;
          return d;
        },
        py::arg("x"), py::arg("n"), py::arg("delta"), py::arg("m"), py::arg("x_param"), py::arg("y_param"));
  m.def("reconstruct",
        [](const FourManifold& y, const std::vector<std::int64_t>& w, std::int64_t delta, std::int64_t m,
           const std::string& branch) {
          return std::string(to_string(witten_via_cobordism(y, to_vector(w), delta, m, parse_branch(branch)).status));
        },
        py::arg("y"), py::arg("w"), py::arg("delta"), py::arg("m"), py::arg("branch"),
        "'match', 'mismatch' or 'gap'.");

  m.def("run",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_command(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one CLI command; returns (exit_code, stdout, stderr).");
}
