#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "linefol/cli.hpp"
#include "linefol/eikonal.hpp"
#include "linefol/expr.hpp"
#include "linefol/foliations.hpp"

using namespace linefol;
using json = nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Gq scalar(const json& j) { return *parse_expr(j.get<std::string>(), VarSet()).constant_value(); }

template <std::size_t N>
std::array<Gq, N> scalars(const json& j) {
  std::array<Gq, N> out;
  for (std::size_t k = 0; k < N; ++k) out[k] = scalar(j.at(k));
  return out;
}

const std::string A = "(z2 - z1^2)";
const std::string B = "(z3 - z1*z2)";
const std::vector<std::string> kChords = {A + "^2", A + "*" + B, B + "^2 - z1*" + A + "*" + B + " + z2*" + A + "^2"};

PolyVectorField field_of(const json& report) {
  std::vector<std::string> comps;
  for (const auto& c : report["inputs"]["field"]) comps.push_back(c.get<std::string>());
  return PolyVectorField::from_strings(VarSet::parse(report["inputs"]["vars"].get<std::string>()), comps);
}

// Rebuilds the library report from the JSON, so verify_report sees only
// what crossed the wire.
ClassifyReport classify_report_of(const json& r) {
  ClassifyReport out;
  out.seed = r["seed"].get<std::uint64_t>();
  for (const auto& l : r["result"]["sample_lines"]) out.sample_lines.emplace_back(scalars<6>(l));
  const std::string cls = r["result"]["class"].get<std::string>();
  const json& c = r["certificate"];
  if (cls == "RadialPoint") {
    Point3H center(scalars<4>(r["result"]["center"]));
    out.cls = RadialPoint{center};
    out.certificate = RadialCertificate{scalar(c["scale"]), Point3H(scalars<4>(c["center"]))};
  } else if (cls == "OpenBook") {
    out.cls = OpenBook{Line3(scalars<6>(r["result"]["axis"]))};
    OpenBookCertificate b;
    for (const auto& p : c["planes"]) b.planes.push_back(scalars<4>(p));
    for (const auto& g : c["axis_pairings"]) b.axis_pairings.push_back(scalar(g));
    out.certificate = b;
  } else {
    out.cls = CubicChords{};
    out.certificate = ChordCertificate{c["candidates_rejected"].get<std::size_t>(),
                                       c["transversals_infinite"].get<bool>()};
  }
  return out;
}

}  // namespace

TEST(Cli, LineFieldExample) {
  Invocation r = run({"line-field", "--vars", "z1,z2,z3", "z1", "z2", "z3"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.report();
  EXPECT_EQ(j["certificate"]["mu"], "1");
  EXPECT_EQ(j["result"]["holds"], true);
  EXPECT_EQ(j["version"], "1.0");
  EXPECT_EQ(j["command"], "line-field");
  EXPECT_TRUE(j.contains("seed"));
}

TEST(Cli, EikonalCheckExample) {
  Invocation r = run({"eikonal-check", "--vars", "z1,z2,z3", "z1 + (z2 + i*z3)^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["csq"], "1");
}

TEST(Cli, ClassifyChordsExample) {
  std::vector<std::string> args = {"classify", "--seed", "7"};
  args.insert(args.end(), kChords.begin(), kChords.end());
  Invocation r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.report();
  EXPECT_EQ(j["result"]["class"], "CubicChords");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_TRUE(verify_report(field_of(j), classify_report_of(j)));
}

TEST(Cli, IdenticalArgvGiveIdenticalBytes) {
  std::vector<std::vector<std::string>> cases = {
      {"frame-sample", "--seed", "11"},
      {"gauss-rank", "--seed", "3", "z1^2 + z2*z3"},
      {"eikonal-decompose", "--seed", "5", "z1 + (z2 + i*z3)^2"},
      {"eikonal-build", "--seed", "4", "1/(t + 2)"},
      {"classify", "--seed", "2", "z1^2", "z1*z2", "z1*z3 - z2"},
  };
  std::vector<std::string> chords = {"classify", "--seed", "7"};
  chords.insert(chords.end(), kChords.begin(), kChords.end());
  cases.push_back(chords);
  for (const auto& args : cases) {
    Invocation a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
  }
  EXPECT_NE(run({"frame-sample", "--seed", "11"}).out, run({"frame-sample", "--seed", "12"}).out);
}

TEST(Cli, LineFieldCertificateReverifies) {
  for (const auto& comps : std::vector<std::vector<std::string>>{
           {"z1", "z2", "z3"}, {"z1^2", "z1*z2", "z1*z3 - z2"}, {"z2", "z1", "1"}}) {
    std::vector<std::string> args = {"line-field"};
    args.insert(args.end(), comps.begin(), comps.end());
    Invocation r = run(args);
    json j = r.report();
    PolyVectorField x = field_of(j);
    LineFieldCertificate c;
    c.holds = j["result"]["holds"].get<bool>();
    if (c.holds) c.mu = parse_poly(j["certificate"]["mu"].get<std::string>(), x.vars());
    EXPECT_EQ(r.code, c.holds ? 0 : 1);
    if (c.holds) EXPECT_TRUE(verify_certificate(x, c));
  }
}

TEST(Cli, NotALineFieldExitsOne) {
  Invocation r = run({"line-field", "z2", "z1", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report()["result"]["holds"], false);
  EXPECT_TRUE(r.report()["certificate"].contains("failing_pair"));
  Invocation c = run({"classify", "z2", "z1", "1"});
  EXPECT_EQ(c.code, 1);
  EXPECT_TRUE(c.report()["result"]["class"].is_null());
}

TEST(Cli, ClassifyCertificatesReverify) {
  std::vector<std::vector<std::string>> fields = {
      {"z1 - 1", "z2 + 2", "z3"},           // radial, finite center
      {"1", "2", "i"},                      // radial, center at infinity
      {"z1^2", "z1*z2", "z1*z3 - z2"},      // open book
      {"1", "z3^2", "0"},                   // open book, axis at infinity
  };
  std::vector<std::string> expected = {"RadialPoint", "RadialPoint", "OpenBook", "OpenBook"};
  for (std::size_t k = 0; k < fields.size(); ++k) {
    std::vector<std::string> args = {"classify", "--seed", std::to_string(k)};
    args.insert(args.end(), fields[k].begin(), fields[k].end());
    Invocation r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    json j = r.report();
    EXPECT_EQ(j["result"]["class"], expected[k]);
    EXPECT_TRUE(verify_report(field_of(j), classify_report_of(j))) << k;
  }
}

TEST(Cli, EikonalDecomposeReverifies) {
  for (const char* f : {"z1 + (z2 + i*z3)^2", "z1 + i*z2 + 5*z3 + 1/(z1 + i*z2 - 2)"}) {
    Invocation r = run({"eikonal-decompose", "--seed", "9", f});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = r.report();
    const json& fr = j["result"]["frame"];
    IsotropicFrame frame{LinearForm{scalars<3>(fr["alpha"])}, LinearForm{scalars<3>(fr["beta"])},
                         scalar(fr["csq"])};
    RatFunc ell = parse_expr(j["result"]["ell"].get<std::string>(), VarSet::parse("t"));
    EXPECT_NO_THROW(frame.validate());
    EXPECT_EQ(build_solution(frame, ell), parse_expr(f, VarSet::coordinates(3)));
  }
  EXPECT_EQ(run({"eikonal-decompose", "z1^2"}).code, 1);
}

TEST(Cli, SampledFrameReverifies) {
  Invocation r = run({"frame-sample", "--seed", "21", "--height", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.report()["result"];
  IsotropicFrame f{LinearForm{scalars<3>(j["alpha"])}, LinearForm{scalars<3>(j["beta"])}, scalar(j["csq"])};
  EXPECT_NO_THROW(f.validate());
  EXPECT_FALSE(f.beta.is_zero());

  Invocation b = run({"eikonal-build", "--seed", "21", "--height", "30", "t^3"});
  ASSERT_EQ(b.code, 0) << b.err;
  json bj = b.report();
  EXPECT_EQ(bj["inputs"]["frame"], j);
  RatFunc built = parse_expr(bj["result"]["f"].get<std::string>(), VarSet::coordinates(3));
  EXPECT_EQ(is_eikonal_solution(built), f.csq);
}

TEST(Cli, PropertyExitCodes) {
  EXPECT_EQ(run({"eikonal-check", "z1^2"}).code, 1);
  EXPECT_EQ(run({"flow-check", "z1 + (z2 + i*z3)^2"}).code, 0);
  EXPECT_EQ(run({"flow-check", "z1^2 + z2^2"}).code, 1);
  EXPECT_EQ(run({"monge-ampere", "--vars", "z1,z2", "z1*z2"}).code, 1);
  EXPECT_EQ(run({"monge-ampere", "--vars", "z1,z2", "(z1^2 + z2^2)/2"}).code, 0);
  EXPECT_EQ(run({"annihilator", "--vars", "z1,z2,z3,z4,z5", "X3*X5 - X4^2",
                 "z1^2*z3 + z1*z2*z4 + z2^2*z5"}).code, 0);
  EXPECT_EQ(run({"annihilator", "X1", "z1 + z2"}).code, 1);
  EXPECT_EQ(run({"burgers", "--vars", "z1,z2", "z2/z1"}).code, 0);
  EXPECT_EQ(run({"burgers", "--vars", "z1,z2", "z2"}).code, 1);
  EXPECT_EQ(run({"gordan-noether"}).code, 0);
  EXPECT_EQ(run({"hesse-construct", "--dim", "3", "--kind", "2", "0", "t^2", "t^3"}).code, 0);
  EXPECT_EQ(run({"hesse-construct", "--dim", "3", "--kind", "1", "--epsilon", "1", "z2^2*z3"}).code, 0);
  EXPECT_EQ(run({"hesse-construct", "--dim", "2", "--kind", "2", "--pair", "1,2", "t^2 + 1/t"}).code, 0);
  EXPECT_EQ(run({"symmetry", "z1", "z2", "0", "z1^2", "z1*z2", "z1*z3 - z2"}).code, 0);
  EXPECT_EQ(run({"symmetry", "0", "0", "z3", "z1^2", "z1*z2", "z1*z3 - z2^2"}).code, 1);
  EXPECT_EQ(run({"riccati", "--family", "quadratic", "--param", "3"}).code, 0);
  EXPECT_EQ(run({"riccati", "--family", "euler", "--param", "-2"}).code, 0);
  EXPECT_EQ(run({"riccati", "--family", "euler", "--param", "1/2"}).code, 1);
  EXPECT_EQ(run({"riccati", "--a", "t^2", "--c3", "-1", "t"}).code, 1);
  EXPECT_EQ(run({"riccati", "--a", "t", "--c3", "2", "t^2"}).code, 0);
}

TEST(Cli, ResultsMatchLibrary) {
  json h = run({"hessian", "--vars", "z1,z2", "z1^2*z2"}).report()["result"];
  EXPECT_EQ(h["determinant"], "-4*z1^2");
  EXPECT_EQ(h["matrix"][0][0], "2*z2");
  json g = run({"gordan-noether"}).report()["result"];
  EXPECT_EQ(g["hessian_det"], "0");
  EXPECT_EQ(g["gauss_rank"], 4);
  EXPECT_EQ(run({"gauss-rank", "z1^2 + z2*z3"}).report()["result"]["rank"], 3);
  EXPECT_EQ(run({"eikonal-op", "z1*z2"}).report()["result"]["operator"], "z1^2 + z2^2");
  json p = run({"parse", "--vars", "z1,z2", "2/3^2*z1/(z1*z2)"}).report()["result"];
  EXPECT_EQ(p["expr"], "2/9/z2");
  EXPECT_EQ(p["polynomial"], false);
}

TEST(Cli, InputErrorsExitTwoOnStderr) {
  std::vector<std::vector<std::string>> bad = {
      {},
      {"no-such-command"},
      {"parse", "z1 +"},
      {"parse", "q1"},
      {"parse", "z9"},
      {"line-field", "z1", "z2"},
      {"classify", "0", "0", "0"},
      {"eikonal-op", "1/(z1 - z1)"},
      {"gauss-rank", "--trials", "0", "z1"},
      {"frame-sample", "--height", "0"},
      {"hesse-construct", "--dim", "4", "z1"},
      {"hesse-construct", "--dim", "2", "--pair", "0,0", "t^2"},
      {"riccati", "--family", "cubic"},
      {"riccati"},
      {"parse", "z1", "--json", "--text"},
      {"parse", "--seed", "abc", "z1"},
      {"eikonal-build", "--alpha", "1,0", "--beta", "0,1,i", "--csq", "1", "t"},
  };
  for (const auto& args : bad) {
    Invocation r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_TRUE(r.out.empty()) << r.out;
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, TextMode) {
  Invocation r = run({"eikonal-check", "--text", "z1 + (z2 + i*z3)^2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("command: eikonal-check\n"), std::string::npos);
  EXPECT_NE(r.out.find("result.csq: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("version: 1.0\n"), std::string::npos);
}

TEST(Cli, Help) {
  Invocation r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}
