#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "overdet/bounds.hpp"
#include "overdet/errors.hpp"
#include "overdet/groebner.hpp"
#include "overdet/report.hpp"
#include "overdet/variety.hpp"
#include "overdet/weights.hpp"

namespace py = pybind11;
using namespace overdet;

namespace {

std::vector<Polynomial> parse_all(const std::vector<std::string>& polys,
                                  const std::vector<std::string>& vars) {
  std::vector<Polynomial> out;
  for (const auto& p : polys) out.push_back(parse_polynomial(p, vars));
  return out;
}

MonomialOrder order_of(const std::string& name) {
  if (name == "lex") return MonomialOrder::lex;
  if (name == "grlex") return MonomialOrder::grlex;
  if (name == "grevlex") return MonomialOrder::grevlex;
  throw InputError("unknown order " + name);
}

}  // namespace

PYBIND11_MODULE(_overdet, m) {
  m.doc() = "exact algebra and weight-function numerics for overdetermined systems";
  m.attr("__version__") = kToolVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ArithmeticError);

  m.def("run", [](const std::string& sub, const std::string& input, std::uint64_t seed,
                  int puiseux_order, std::optional<double> rmax, std::optional<std::string> s,
                  const std::string& mode, bool lenient) {
          RunOptions opt;
          opt.seed = seed;
          opt.puiseux_order = puiseux_order;
          opt.rmax = rmax;
          opt.s = s;
          opt.mode = mode;
          RunResult r;
          {
            py::gil_scoped_release release;
            r = run_subcommand(sub, input, opt, {.lenient = lenient});
          }
          return py::make_tuple(render_json(r.report), r.exit_code);
        },
        py::arg("subcommand"), py::arg("input"), py::arg("seed") = kDefaultSeed,
        py::arg("puiseux_order") = 4, py::arg("rmax") = py::none(), py::arg("s") = py::none(),
        py::arg("mode") = "probe", py::arg("lenient") = false,
        "Run a subcommand on a JSON document; returns (report JSON, exit code).");

  m.def("ideal_basis", [](const std::vector<std::string>& polys,
                          const std::vector<std::string>& vars, const std::string& order) {
          const auto gb = ideal_basis(parse_all(polys, vars), TermOrder(order_of(order)));
          std::vector<std::string> out;
          for (const auto& g : gb.generators) out.push_back(format_polynomial(g[0], vars));
          return out;
        },
        py::arg("polys"), py::arg("variables"), py::arg("order") = "grevlex");

  m.def("ideal_member", [](const std::string& f, const std::vector<std::string>& polys,
                           const std::vector<std::string>& vars) {
          const auto gb = ideal_basis(parse_all(polys, vars), TermOrder(MonomialOrder::grevlex));
          return ideal_membership(parse_polynomial(f, vars), gb);
        },
        py::arg("f"), py::arg("polys"), py::arg("variables"));

  m.def("factor", [](const std::string& p, const std::vector<std::string>& vars) {
          const auto fl = factor(parse_polynomial(p, vars));
          std::vector<std::pair<std::string, int>> fs;
          for (const auto& [f, k] : fl.factors) fs.emplace_back(format_polynomial(f, vars), k);
          return py::make_tuple(format_rational(fl.unit), fs, fl.complete);
        },
        py::arg("p"), py::arg("variables"), "(unit, [(factor, multiplicity)], complete)");

  m.def("puiseux", [](const std::string& curve, const std::vector<std::string>& vars, int order) {
          if (vars.size() != 2) throw InputError("puiseux needs two variables");
          const auto res = puiseux_at_infinity(parse_polynomial(curve, vars), order);
          py::list out;
          for (const auto& b : res.branches) {
            py::list terms;
            for (const auto& t : b.terms) {
              terms.append(py::make_tuple(format_rational(t.exponent), t.coefficient));
            }
            py::dict d;
            d["ramification"] = b.ramification;
            d["terms"] = terms;
            d["conjugacy_class"] = b.conjugacy_class;
            d["exact"] = b.exact;
            out.append(d);
          }
          return out;
        },
        py::arg("curve"), py::arg("variables") = std::vector<std::string>{"z1", "z2"},
        py::arg("order") = 4);

  m.def("solve", [](const std::vector<std::string>& polys, const std::vector<std::string>& vars) {
          const auto gens = parse_all(polys, vars);
          std::vector<py::tuple> out;
          for (const auto& s : solve_zero_dim(gens)) {
            out.push_back(py::make_tuple(s.point, s.multiplicity, s.residual));
          }
          return out;
        },
        py::arg("polys"), py::arg("variables"), "[(point, multiplicity, residual)]");

  py::class_<WeightFunction>(m, "Weight")
      .def(py::init([](const std::string& doc) { return WeightFunction(parse_weight(doc)); }),
           py::arg("spec_json"))
      .def("__call__", &WeightFunction::operator(), py::arg("t"))
      .def("raw", &WeightFunction::raw)
      .def("phi", &WeightFunction::phi)
      .def("describe", &WeightFunction::describe)
      .def("young", [](const WeightFunction& w, double y) { return young_conjugate(w)(y); },
           py::arg("y"))
      .def("biconjugate_error", [](const WeightFunction& w, int n) { return biconjugate_check(w, n); },
           py::arg("samples") = 20);

  m.def("supporting_function", [](const std::vector<std::vector<double>>& vertices,
                                  const std::vector<double>& y) {
          std::vector<std::vector<Rational>> v;
          for (const auto& p : vertices) {
            std::vector<Rational> q;
            for (double x : p) q.emplace_back(x);
            v.push_back(std::move(q));
          }
          return supporting_function(ConvexBody::polytope(std::move(v)), std::span<const double>(y));
        },
        py::arg("vertices"), py::arg("y"));
}
