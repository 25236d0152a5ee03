#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "linefol/cli.hpp"
#include "linefol/eikonal.hpp"
#include "linefol/error.hpp"
#include "linefol/expr.hpp"
#include "linefol/foliations.hpp"
#include "linefol/pde.hpp"

namespace py = pybind11;
using namespace linefol;

namespace {

PolyVectorField field(const std::vector<std::string>& comps, const std::string& vars) {
  return PolyVectorField::from_strings(VarSet::parse(vars), comps);
}

Gq scalar(const std::string& text) {
  auto c = parse_expr(text, VarSet()).constant_value();
  if (!c) fail(ErrorCode::InvalidArgument, "expected a constant, got '" + text + "'");
  return *c;
}

LinearForm form(const std::vector<std::string>& xs) {
  if (xs.size() != 3) fail(ErrorCode::ArityMismatch, "a linear form has 3 coefficients");
  return {{scalar(xs[0]), scalar(xs[1]), scalar(xs[2])}};
}

std::vector<std::string> texts(const std::array<Gq, 3>& xs) {
  return {format_scalar(xs[0]), format_scalar(xs[1]), format_scalar(xs[2])};
}

}  // namespace

PYBIND11_MODULE(_linefol, m) {
  m.doc() = "Exact algebra for line foliations and eikonal solutions; values cross as strings.";
  py::register_exception<Error>(m, "LinefolError", PyExc_ValueError);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");

  m.def("parse", [](const std::string& expr, const std::string& vars) {
    return format_expr(parse_expr(expr, VarSet::parse(vars)));
  }, py::arg("expr"), py::arg("vars") = "z1,z2,z3");

  m.def("line_field_mu", [](const std::vector<std::string>& comps, const std::string& vars) -> py::object {
    LineFieldCertificate c = line_field_certificate(field(comps, vars));
    if (!c.holds) return py::none();
    return py::str(format_poly(*c.mu));
  }, py::arg("components"), py::arg("vars") = "z1,z2,z3", "The cofactor mu, or None when not a line field.");

  m.def("classify", [](const std::vector<std::string>& comps, std::uint64_t seed, const std::string& vars) {
    PolyVectorField x = field(comps, vars);
    ClassifyReport r = classify(x, seed);
    return py::make_tuple(class_name(r.cls), verify_report(x, r));
  }, py::arg("components"), py::arg("seed") = 0, py::arg("vars") = "z1,z2,z3",
     "(class name, certificate re-verified)");

  m.def("eikonal_csq", [](const std::string& f, const std::string& vars) -> py::object {
    auto c = is_eikonal_solution(parse_expr(f, VarSet::parse(vars)));
    if (!c) return py::none();
    return py::str(format_scalar(*c));
  }, py::arg("f"), py::arg("vars") = "z1,z2,z3");

  m.def("build_solution", [](const std::vector<std::string>& alpha, const std::vector<std::string>& beta,
                             const std::string& csq, const std::string& ell) {
    IsotropicFrame frame{form(alpha), form(beta), scalar(csq)};
    return format_expr(build_solution(frame, parse_expr(ell, VarSet::parse("t"))));
  }, py::arg("alpha"), py::arg("beta"), py::arg("csq"), py::arg("ell"));

  m.def("decompose", [](const std::string& f, std::uint64_t seed) {
    EikonalSolution s = decompose_solution(parse_expr(f, VarSet::coordinates(3)), seed);
    py::dict d;
    d["alpha"] = texts(s.frame.alpha.coeffs);
    d["beta"] = texts(s.frame.beta.coeffs);
    d["csq"] = format_scalar(s.frame.csq);
    d["ell"] = format_expr(s.ell);
    return d;
  }, py::arg("f"), py::arg("seed") = 0);

  m.def("hessian_det", [](const std::string& f, const std::string& vars) {
    return format_expr(hessian_det(parse_expr(f, VarSet::parse(vars))));
  }, py::arg("f"), py::arg("vars") = "z1,z2,z3");

  m.def("gordan_noether", [] { return format_poly(gordan_noether()); });

  m.def("riccati_residual", [](const std::string& family, const std::string& param, const std::string& y) {
    return format_expr(riccati_residual(riccati_family(parse_riccati_family(family), scalar(param)), parse_expr(y, VarSet::parse("t"))));
  }, py::arg("family"), py::arg("param"), py::arg("y"));
}
