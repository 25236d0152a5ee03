#include "linefol/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>

#include "linefol/eikonal.hpp"
#include "linefol/error.hpp"
#include "linefol/expr.hpp"
#include "linefol/foliations.hpp"
#include "linefol/pde.hpp"

namespace linefol::cli {

namespace {

using json = nlohmann::json;

struct Options {
  std::string vars = "z1,z2,z3";
  std::uint64_t seed = 0;
  std::int64_t height = 100;
  int trials = 5;
  bool text = false;
  std::vector<std::string> args;

  std::optional<std::string> csq;
  std::string alpha, beta;
  int dim = 2;
  int kind = 1;
  int epsilon = 0;
  std::string pair, consts;
  std::optional<std::string> family;
  std::string param = "0";
  std::optional<std::string> a;
  std::string c0 = "0", c3 = "0", a3 = "0";
};

struct Outcome {
  json inputs = json::object();
  json result = json::object();
  json certificate;  // null when absent
  int code = 0;
};

// ---- wire format -------------------------------------------------------

json str(const Gq& c) { return format_scalar(c); }
json str(const MultiPoly& p) { return format_poly(p); }
json str(const RatFunc& f) { return format_expr(f); }

template <class Range>
json str_list(const Range& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(str(x));
  return out;
}

Gq scalar(const std::string& text) {
  RatFunc f = parse_expr(text, VarSet());
  auto c = f.constant_value();
  if (!c) fail(ErrorCode::InvalidArgument, "expected a constant, got '" + text + "'");
  return *c;
}

// "a,b,c" -> scalars; an empty string gives no values.
std::vector<Gq> scalar_list(const std::string& csv) {
  std::vector<Gq> out;
  if (csv.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = csv.find(',', start);
    out.push_back(scalar(csv.substr(start, comma - start)));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

LinearForm linear_form(const std::string& csv, const char* what) {
  std::vector<Gq> xs = scalar_list(csv);
  if (xs.size() != 3)
    fail(ErrorCode::ArityMismatch, std::string(what) + " needs 3 coefficients");
  return {{xs[0], xs[1], xs[2]}};
}

const VarSet& t_vars() {
  static const VarSet v = VarSet::parse("t");
  return v;
}

void require_args(const Options& o, std::size_t n, const char* usage) {
  if (o.args.size() != n) fail(ErrorCode::InvalidArgument, std::string("usage: ") + usage);
}

PolyVectorField field_from(const VarSet& v, const std::vector<std::string>& comps) {
  if (comps.size() != v.size())
    fail(ErrorCode::ArityMismatch, "expected " + std::to_string(v.size()) + " components, got " +
                                       std::to_string(comps.size()));
  return PolyVectorField::from_strings(v, comps);
}

json pair_residual(const PairResidual& r) {
  return {{"i", r.i}, {"j", r.j}, {"residual", str(r.residual)}};
}

json frame_json(const IsotropicFrame& f) {
  return {{"alpha", str_list(f.alpha.coeffs)}, {"beta", str_list(f.beta.coeffs)}, {"csq", str(f.csq)}};
}

// ---- subcommands -------------------------------------------------------

Outcome cmd_parse(const Options& o) {
  require_args(o, 1, "parse EXPR");
  VarSet v = VarSet::parse(o.vars);
  RatFunc f = parse_expr(o.args[0], v);
  Outcome out;
  out.inputs = {{"expr", o.args[0]}, {"vars", o.vars}};
  out.result = {{"expr", str(f)}, {"numerator", str(f.num())}, {"denominator", str(f.den())},
                {"polynomial", f.is_polynomial()}};
  return out;
}

Outcome cmd_line_field(const Options& o) {
  VarSet v = VarSet::parse(o.vars);
  PolyVectorField x = field_from(v, o.args);
  LineFieldCertificate c = line_field_certificate(x);
  Outcome out;
  out.inputs = {{"field", str_list(x.components())}, {"vars", o.vars}};
  out.result = {{"holds", c.holds}};
  if (c.holds)
    out.certificate = {{"mu", str(*c.mu)}};
  else
    out.certificate = {{"failing_pair", pair_residual(*c.failing_pair)}};
  out.code = c.holds ? 0 : 1;
  return out;
}

json classify_certificate(const ClassifyCertificate& c) {
  if (const auto* r = std::get_if<RadialCertificate>(&c))
    return {{"kind", "radial"}, {"scale", str(r->scale)}, {"center", str_list(r->center.coords())}};
  if (const auto* b = std::get_if<OpenBookCertificate>(&c)) {
    json planes = json::array();
    for (const auto& p : b->planes) planes.push_back(str_list(p));
    return {{"kind", "open-book"}, {"planes", planes}, {"residual", str(b->residual)},
            {"axis_pairings", str_list(b->axis_pairings)}};
  }
  const auto& ch = std::get<ChordCertificate>(c);
  return {{"kind", "chords"}, {"candidates_rejected", ch.candidates_rejected},
          {"transversals_infinite", ch.transversals_infinite}};
}

Outcome cmd_classify(const Options& o) {
  VarSet v = VarSet::parse(o.vars);
  PolyVectorField x = field_from(v, o.args);
  Outcome out;
  out.inputs = {{"field", str_list(x.components())}, {"vars", o.vars}};
  LineFieldCertificate lf = line_field_certificate(x);
  if (!lf.holds) {
    out.result = {{"line_field", false}, {"class", nullptr}};
    out.certificate = {{"failing_pair", pair_residual(*lf.failing_pair)}};
    out.code = 1;
    return out;
  }
  ClassifyReport r = classify(x, o.seed);
  out.result = {{"line_field", true}, {"class", class_name(r.cls)}};
  if (const auto* p = std::get_if<RadialPoint>(&r.cls)) out.result["center"] = str_list(p->center.coords());
  if (const auto* b = std::get_if<OpenBook>(&r.cls)) out.result["axis"] = str_list(b->axis.plucker());
  json lines = json::array();
  for (const auto& l : r.sample_lines) lines.push_back(str_list(l.plucker()));
  out.result["sample_lines"] = lines;
  out.certificate = classify_certificate(r.certificate);
  return out;
}

Outcome cmd_eikonal_op(const Options& o) {
  require_args(o, 1, "eikonal-op EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}};
  out.result = {{"operator", str(eikonal_operator(f))}};
  return out;
}

Outcome cmd_eikonal_check(const Options& o) {
  require_args(o, 1, "eikonal-check EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  auto csq = is_eikonal_solution(f);
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}};
  out.result = {{"solution", csq.has_value()}, {"csq", csq ? str(*csq) : json(nullptr)}};
  if (!csq) out.certificate = {{"operator", str(eikonal_operator(f))}};
  out.code = csq ? 0 : 1;
  return out;
}

IsotropicFrame frame_from(const Options& o, Outcome& out) {
  if (o.alpha.empty() && o.beta.empty() && !o.csq) {
    Rng rng(o.seed);
    IsotropicFrame f = sample_isotropic_frame(rng, o.height);
    out.inputs["frame_sampled"] = true;
    return f;
  }
  if (o.alpha.empty() || o.beta.empty() || !o.csq)
    fail(ErrorCode::InvalidArgument, "--alpha, --beta and --csq go together");
  out.inputs["frame_sampled"] = false;
  return {linear_form(o.alpha, "--alpha"), linear_form(o.beta, "--beta"), scalar(*o.csq)};
}

Outcome cmd_eikonal_build(const Options& o) {
  require_args(o, 1, "eikonal-build ELL");
  Outcome out;
  RatFunc ell = parse_expr(o.args[0], t_vars());
  IsotropicFrame frame = frame_from(o, out);
  RatFunc f = build_solution(frame, ell);
  out.inputs["ell"] = str(ell);
  out.inputs["frame"] = frame_json(frame);
  out.result = {{"f", str(f)}};
  out.certificate = {{"operator", str(eikonal_operator(f))}};
  return out;
}

Outcome cmd_eikonal_decompose(const Options& o) {
  require_args(o, 1, "eikonal-decompose EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}};
  try {
    EikonalSolution s = decompose_solution(f, o.seed);
    out.result = {{"decomposed", true}, {"frame", frame_json(s.frame)}, {"ell", str(s.ell)}};
    out.certificate = {{"rebuild", str(build_solution(s))}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotASolution && e.code() != ErrorCode::StructureViolation) throw;
    out.result = {{"decomposed", false}, {"reason", e.what()}};
    out.code = 1;
  }
  return out;
}

Outcome cmd_flow_check(const Options& o) {
  require_args(o, 1, "flow-check EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}};
  std::optional<Gq> csq = o.csq ? std::optional<Gq>(scalar(*o.csq)) : is_eikonal_solution(f);
  if (!csq) {
    out.result = {{"solution", false}};
    out.certificate = {{"operator", str(eikonal_operator(f))}};
    out.code = 1;
    return out;
  }
  bool flow = flow_identity_check(f, *csq);
  bool grad = gradient_first_integral_check(f);
  out.inputs["csq"] = str(*csq);
  out.result = {{"flow_identity", flow}, {"gradient_first_integrals", grad}};
  out.code = flow && grad ? 0 : 1;
  return out;
}

Outcome cmd_hessian(const Options& o) {
  require_args(o, 1, "hessian EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  json rows = json::array();
  for (const auto& row : hessian(f)) rows.push_back(str_list(row));
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}};
  out.result = {{"matrix", rows}, {"determinant", str(hessian_det(f))}};
  return out;
}

Outcome cmd_monge_ampere(const Options& o) {
  require_args(o, 1, "monge-ampere EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  RatFunc r = monge_ampere_residual(f);
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}};
  out.result = {{"residual", str(r)}, {"holds", r.is_zero()}};
  out.code = r.is_zero() ? 0 : 1;
  return out;
}

Outcome cmd_gauss_rank(const Options& o) {
  require_args(o, 1, "gauss-rank EXPR");
  RatFunc f = parse_expr(o.args[0], VarSet::parse(o.vars));
  Rng rng(o.seed);
  std::size_t r = gauss_generic_rank(f, rng, o.trials, o.height);
  Outcome out;
  out.inputs = {{"f", str(f)}, {"vars", o.vars}, {"trials", o.trials}, {"height", o.height}};
  out.result = {{"rank", r}, {"variables", f.vars().size()}};
  return out;
}

// X<k> in the annihilator stands for the k-th partial derivative.
MultiPoly annihilator_poly(std::string text, std::size_t n) {
  std::replace(text.begin(), text.end(), 'X', 'z');
  return parse_poly(text, VarSet::coordinates(n));
}

Outcome cmd_annihilator(const Options& o) {
  require_args(o, 2, "annihilator P F");
  RatFunc f = parse_expr(o.args[1], VarSet::parse(o.vars));
  MultiPoly p = annihilator_poly(o.args[0], f.vars().size());
  bool holds = annihilator_check(p, f);
  Outcome out;
  out.inputs = {{"p", o.args[0]}, {"f", str(f)}, {"vars", o.vars}};
  out.result = {{"holds", holds}};
  out.code = holds ? 0 : 1;
  return out;
}

Outcome cmd_burgers(const Options& o) {
  require_args(o, 1, "burgers EXPR");
  RatFunc a = parse_expr(o.args[0], VarSet::parse(o.vars));
  RatFunc r = burgers_residual(a);
  Outcome out;
  out.inputs = {{"a", str(a)}, {"vars", o.vars}};
  out.result = {{"residual", str(r)}, {"holds", r.is_zero()}};
  out.code = r.is_zero() ? 0 : 1;
  return out;
}

Outcome cmd_gordan_noether(const Options& o) {
  require_args(o, 0, "gordan-noether");
  MultiPoly phi = gordan_noether();
  RatFunc det = hessian_det(RatFunc(phi));
  bool ann = annihilator_check(annihilator_poly("X3*X5 - X4^2", 5), RatFunc(phi));
  Rng rng(o.seed);
  std::size_t r = gauss_generic_rank(RatFunc(phi), rng, o.trials, o.height);
  Outcome out;
  out.inputs = {{"trials", o.trials}, {"height", o.height}};
  out.result = {{"phi", str(phi)}, {"hessian_det", str(det)}, {"gauss_rank", r}};
  out.certificate = {{"annihilator", "X3*X5 - X4^2"}, {"annihilator_holds", ann}};
  out.code = det.is_zero() && ann ? 0 : 1;
  return out;
}

Outcome cmd_hesse_construct(const Options& o) {
  Outcome out;
  out.inputs = {{"dim", o.dim}, {"kind", o.kind}};
  RatFunc f;
  if (o.dim == 2) {
    require_args(o, 1, "hesse-construct --dim 2 --kind K --pair P1,P2 [--c C1,C2,C3] ELL");
    std::vector<Gq> pair = scalar_list(o.pair), consts = scalar_list(o.consts);
    if (pair.size() != 2) fail(ErrorCode::ArityMismatch, "--pair needs 2 values");
    if (!consts.empty() && consts.size() != 3) fail(ErrorCode::ArityMismatch, "--c needs 3 values");
    Hesse2dParams p;
    p.kind = o.kind;
    p.ell = parse_expr(o.args[0], t_vars());
    p.pair = {pair[0], pair[1]};
    if (!consts.empty()) p.c = {consts[0], consts[1], consts[2]};
    out.inputs["ell"] = str(p.ell);
    out.inputs["pair"] = str_list(p.pair);
    out.inputs["c"] = str_list(p.c);
    f = hesse2d_construct(p);
  } else if (o.dim == 3) {
    Hesse3dParams p;
    p.kind = o.kind;
    if (o.kind == 1) {
      require_args(o, 1, "hesse-construct --dim 3 --kind 1 [--epsilon E] PHI");
      p.epsilon = o.epsilon;
      p.phi = parse_poly(o.args[0], VarSet::coordinates(3));
      out.inputs["epsilon"] = o.epsilon;
      out.inputs["phi"] = str(p.phi);
    } else {
      require_args(o, 3, "hesse-construct --dim 3 --kind 2 A1 A2 A3");
      for (std::size_t k = 0; k < 3; ++k) p.a[k] = parse_poly(o.args[k], t_vars());
      out.inputs["a"] = str_list(p.a);
    }
    f = RatFunc(hesse3d_construct(p));
  } else {
    fail(ErrorCode::InvalidArgument, "--dim must be 2 or 3");
  }
  RatFunc det = hessian_det(f);
  out.result = {{"f", str(f)}, {"hessian_det", str(det)}};
  out.code = det.is_zero() ? 0 : 1;
  return out;
}

Outcome cmd_symmetry(const Options& o) {
  VarSet v = VarSet::parse(o.vars);
  const std::size_t n = v.size();
  if (o.args.size() != 2 * n)
    fail(ErrorCode::ArityMismatch, "expected " + std::to_string(2 * n) +
                                       " components (Y then X), got " + std::to_string(o.args.size()));
  PolyVectorField y = field_from(v, {o.args.begin(), o.args.begin() + static_cast<long>(n)});
  PolyVectorField x = field_from(v, {o.args.begin() + static_cast<long>(n), o.args.end()});
  auto r = symmetry_residual(y, x);
  Outcome out;
  out.inputs = {{"y", str_list(y.components())}, {"x", str_list(x.components())}, {"vars", o.vars}};
  out.result = {{"holds", !r.has_value()}, {"bracket", str_list(lie_bracket(y, x).components())}};
  if (r) out.certificate = {{"failing_pair", pair_residual(*r)}};
  out.code = r ? 1 : 0;
  return out;
}

Outcome cmd_riccati(const Options& o) {
  if (o.args.size() > 1) fail(ErrorCode::InvalidArgument, "usage: riccati [--family F --param P | --a A ...] [Y]");
  Outcome out;
  RiccatiEquation eq;
  std::optional<RatFunc> y;
  if (o.family) {
    if (o.a) fail(ErrorCode::InvalidArgument, "--family and --a are exclusive");
    Gq param = scalar(o.param);
    RiccatiFamily family = parse_riccati_family(*o.family);
    eq = riccati_family(family, param);
    out.inputs["family"] = *o.family;
    out.inputs["param"] = str(param);
    if (o.args.empty()) y = riccati_family_solution(family, param);
  } else {
    if (!o.a) fail(ErrorCode::InvalidArgument, "riccati needs --family or --a");
    if (o.args.empty()) fail(ErrorCode::InvalidArgument, "a custom equation needs a candidate Y");
    eq = {parse_poly(*o.a, t_vars()), scalar(o.c0), scalar(o.c3), scalar(o.a3)};
  }
  eq.validate();
  if (!o.args.empty()) y = parse_expr(o.args[0], t_vars());
  out.inputs["equation"] = {{"a", str(eq.a)}, {"c0", str(eq.c0)}, {"c3", str(eq.c3)}, {"a3", str(eq.a3)}};
  if (!y) {
    out.result = {{"solution", nullptr}, {"rational_solution_known", false}};
    out.code = 1;
    return out;
  }
  RatFunc r = riccati_residual(eq, *y);
  out.result = {{"solution", str(*y)}, {"residual", str(r)}, {"holds", r.is_zero()}};
  out.code = r.is_zero() ? 0 : 1;
  return out;
}

Outcome cmd_frame_sample(const Options& o) {
  require_args(o, 0, "frame-sample");
  Rng rng(o.seed);
  IsotropicFrame f = sample_isotropic_frame(rng, o.height);
  f.validate();
  Outcome out;
  out.inputs = {{"height", o.height}};
  out.result = frame_json(f);
  out.certificate = {{"alpha_alpha", str(norm2(f.alpha))}, {"beta_beta", str(norm2(f.beta))},
                     {"alpha_beta", str(pairing(f.alpha, f.beta))}};
  return out;
}

// ---- output ------------------------------------------------------------

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact algebra for line foliations and eikonal solutions", "linefol"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--vars", o.vars, "Comma-separated variable names")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for sampled answers")->capture_default_str();
  app.add_option("--height", o.height, "Height bound for sampled coefficients")->capture_default_str();
  app.add_option("--trials", o.trials, "Random evaluation trials")->capture_default_str();
  auto* json_flag = app.add_flag("--json", "JSON report (default)");
  app.add_flag("--text", o.text, "Flat key: value report")->excludes(json_flag);

  using Handler = std::function<Outcome(const Options&)>;
  std::map<std::string, Handler> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Handler h, const char* args_help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("args", o.args, args_help);
    handlers.emplace(name, std::move(h));
    return s;
  };

  sub("parse", "Parse and normalize an expression", cmd_parse, "EXPR");
  sub("line-field", "Decide whether a polynomial field has straight leaves", cmd_line_field, "Components");
  sub("classify", "Classify a line field", cmd_classify, "Components");
  sub("eikonal-op", "Sum of squared partial derivatives", cmd_eikonal_op, "EXPR");
  sub("eikonal-check", "Decide whether the eikonal operator is constant", cmd_eikonal_check, "EXPR");
  CLI::App* build = sub("eikonal-build", "Build alpha.z + ell(beta.z)", cmd_eikonal_build, "ELL in t");
  build->add_option("--alpha", o.alpha, "a1,a2,a3");
  build->add_option("--beta", o.beta, "b1,b2,b3");
  build->add_option("--csq", o.csq, "c^2");
  sub("eikonal-decompose", "Recover frame and profile of a solution", cmd_eikonal_decompose, "EXPR");
  CLI::App* flow = sub("flow-check", "Check the gradient flow identities", cmd_flow_check, "EXPR");
  flow->add_option("--csq", o.csq, "c^2 (default: E(f))");
  sub("hessian", "Hessian matrix and determinant", cmd_hessian, "EXPR");
  sub("monge-ampere", "Hessian determinant as a residual", cmd_monge_ampere, "EXPR");
  sub("gauss-rank", "Generic rank of the Gauss map", cmd_gauss_rank, "EXPR");
  sub("annihilator", "Check P(grad f) = 0, with X<k> for the k-th partial", cmd_annihilator, "P F");
  sub("burgers", "Residual of a_z1 + a a_z2", cmd_burgers, "EXPR");
  sub("gordan-noether", "The Gordan-Noether example", cmd_gordan_noether, "");
  CLI::App* hesse = sub("hesse-construct", "Functions with vanishing Hessian", cmd_hesse_construct, "Profile(s)");
  hesse->add_option("--dim", o.dim, "2 or 3")->capture_default_str();
  hesse->add_option("--kind", o.kind, "1 or 2")->capture_default_str();
  hesse->add_option("--epsilon", o.epsilon, "0 or 1 (dim 3, kind 1)")->capture_default_str();
  hesse->add_option("--pair", o.pair, "a1,a2 or b1,b2 (dim 2)");
  hesse->add_option("--c", o.consts, "c1,c2,c3 (dim 2)");
  sub("symmetry", "Decide whether Y is an infinitesimal symmetry of X", cmd_symmetry, "Y components then X components");
  CLI::App* ric = sub("riccati", "Riccati residuals", cmd_riccati, "Y in t");
  ric->add_option("--family", o.family, "double-pole, euler or quadratic");
  ric->add_option("--param", o.param, "lambda for euler, mu for quadratic")->capture_default_str();
  ric->add_option("--a", o.a, "a(t), degree <= 2");
  ric->add_option("--c0", o.c0)->capture_default_str();
  ric->add_option("--c3", o.c3)->capture_default_str();
  ric->add_option("--a3", o.a3)->capture_default_str();
  sub("frame-sample", "Sample an isotropic frame", cmd_frame_sample, "");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome r;
  try {
    r = handlers.at(command)(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  json report = {{"command", command},        {"inputs", r.inputs}, {"result", r.result},
                 {"certificate", r.certificate}, {"seed", o.seed},     {"version", kReportVersion}};
  if (o.text)
    flatten(report, "", out);
  else
    out << report.dump(2) << "\n";
  return r.code;
}

}  // namespace linefol::cli
