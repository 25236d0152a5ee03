// One PASS/FAIL line per acceptance criterion. All checks are exact; the
// only thresholds are the case counts and time budgets below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <variant>

#include "linefol/eikonal.hpp"
#include "linefol/error.hpp"
#include "linefol/expr.hpp"
#include "linefol/foliations.hpp"
#include "linefol/pde.hpp"

using namespace linefol;

namespace {

constexpr double kGordanNoetherBudgetSeconds = 10.0;
constexpr double kSuiteBudgetSeconds = 300.0;
constexpr int kConstructorCases = 50;
constexpr int kConjugateCases = 50;
constexpr int kClassifyPerType = 40;
constexpr int kEikonalCases = 50;
constexpr int kObstructionCases = 100;
constexpr int kGradientClassifyCases = 20;
constexpr int kHesseCases = 100;
constexpr int kRiccatiCases = 50;
constexpr int kRiccatiSearchDegree = 6;
constexpr int kSymmetryBooks = 10;
constexpr int kKernelCases = 500;

const VarSet kT = VarSet::parse("t");
const VarSet kV3 = VarSet::coordinates(3);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records the first failure only; later ones rarely add information.
  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

Vec3 random_vec(Rng& rng, std::int64_t h) {
  return {sample_gaussian_rational(rng, h), sample_gaussian_rational(rng, h), sample_gaussian_rational(rng, h)};
}

AffineMap random_map(Rng& rng) {
  for (;;) {
    Matrix m(3, std::vector<Gq>(3));
    for (auto& row : m)
      for (auto& x : row) x = sample_gaussian_rational(rng, 5);
    if (!determinant(m).is_zero()) return {m, random_vec(rng, 5)};
  }
}

Point3H random_center(Rng& rng, bool at_infinity) {
  for (;;) {
    Vec3 v = random_vec(rng, 20);
    if (!at_infinity) return Point3H::affine(v);
    if (!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero())) return Point3H::at_infinity(v);
  }
}

OpenBookData random_book(Rng& rng, int max_degree, std::int64_t height) {
  for (;;) {
    auto deg = [&] { return static_cast<int>(rng.uniform(0, max_degree)); };
    OpenBookData d{sample_ratfunc(rng, kT, deg(), deg(), height), sample_ratfunc(rng, kT, deg(), deg(), height)};
    if (!(d.z2_of_t.is_zero() && d.z3_of_t.is_constant())) return d;
  }
}

// Pages z3 = const, each carrying the parallel lines of direction (p, q, 0).
PolyVectorField parallel_pages_book(Rng& rng) {
  for (;;) {
    MultiPoly z3 = MultiPoly::variable(kV3, 2);
    MultiPoly p = sample_poly(rng, VarSet::parse("z3"), 2, 5);
    MultiPoly q = sample_poly(rng, VarSet::parse("z3"), 2, 5);
    auto lift = [&](const MultiPoly& u) {
      return substitute(RatFunc(u), {{"z3", RatFunc(z3)}}, kV3).num();
    };
    MultiPoly a = lift(p), b = lift(q);
    // p/q constant would make it radial at infinity
    if ((a * derivative(b, std::size_t{2}) - b * derivative(a, std::size_t{2})).is_zero()) continue;
    return primitive_reduce(PolyVectorField(kV3, {a, b, MultiPoly(kV3)})).field;
  }
}

RatFunc random_ell(Rng& rng) {
  return sample_ratfunc(rng, kT, static_cast<int>(rng.uniform(0, 4)), static_cast<int>(rng.uniform(0, 4)), 9);
}

bool line_field_verified(const PolyVectorField& x) {
  LineFieldCertificate c = line_field_certificate(x);
  return c.holds && c.mu && verify_certificate(x, c);
}

std::string text(const PolyVectorField& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---- criteria ----------------------------------------------------------

void gordan_noether_suite(Outcome& o) {
  auto start = std::chrono::steady_clock::now();
  MultiPoly phi = gordan_noether();
  o.check(hessian_det(RatFunc(phi)).is_zero(), "det Hess phi != 0");
  VarSet v5 = VarSet::coordinates(5);
  MultiPoly p = parse_poly("z3*z5 - z4^2", v5);  // X3 X5 - X4^2
  o.check(annihilator_check(p, RatFunc(phi)), "X3 X5 - X4^2 does not annihilate");
  Rng rng(1);
  std::size_t rank = gauss_generic_rank(RatFunc(phi), rng, 5, 100);
  o.check(rank == 4, "gauss rank " + std::to_string(rank));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(secs < kGordanNoetherBudgetSeconds, "took " + std::to_string(secs) + " s");
  o.detail << "rank " << rank << ", seed 1";
}

void constructor_suite(Outcome& o) {
  Rng rng(2);
  for (int k = 0; k < kConstructorCases; ++k) {
    PolyVectorField x = radial_field(random_center(rng, k % 3 == 0));
    o.check(line_field_verified(x), "radial " + text(x));
  }
  for (int k = 0; k < kConstructorCases; ++k) {
    PolyVectorField x = open_book_field(random_book(rng, 3, 9));
    o.check(line_field_verified(x), "open book " + text(x));
  }
  PolyVectorField chords = cubic_chord_field();
  o.check(line_field_verified(chords), "cubic chords");
  for (int k = 0; k < kConjugateCases; ++k) {
    PolyVectorField x = conjugate_field(chords, random_map(rng));
    o.check(line_field_verified(x), "chord conjugate " + text(x));
  }
  o.detail << kConstructorCases << " radial, " << kConstructorCases << " open books (degrees <= 3), "
           << kConjugateCases << " chord conjugates";
}

void classifier_suite(Outcome& o) {
  Rng rng(3);
  int radial_inf = 0, axis_inf = 0, total = 0;
  for (int k = 0; k < kClassifyPerType; ++k) {
    bool inf = k % 4 == 0;
    Point3H c = random_center(rng, inf);
    PolyVectorField x = radial_field(c);
    ClassifyReport r = classify(x, rng.next());
    const auto* got = std::get_if<RadialPoint>(&r.cls);
    o.check(got && got->center == c, "radial " + text(x));
    o.check(verify_report(x, r), "radial certificate " + text(x));
    radial_inf += inf;
    ++total;
  }
  for (int k = 0; k < kClassifyPerType; ++k) {
    bool inf = k % 4 == 0;
    PolyVectorField x = inf ? parallel_pages_book(rng) : open_book_field(random_book(rng, 2, 5));
    x = conjugate_field(x, random_map(rng));
    ClassifyReport r = classify(x, rng.next());
    const auto* got = std::get_if<OpenBook>(&r.cls);
    o.check(got != nullptr, "open book " + text(x));
    if (got) o.check(got->axis.is_at_infinity() == inf, "axis position " + text(x));
    o.check(verify_report(x, r), "open book certificate " + text(x));
    axis_inf += inf;
    ++total;
  }
  PolyVectorField chords = cubic_chord_field();
  for (int k = 0; k < kClassifyPerType; ++k) {
    PolyVectorField x = k == 0 ? chords : conjugate_field(chords, random_map(rng));
    ClassifyReport r = classify(x, rng.next());
    o.check(std::holds_alternative<CubicChords>(r.cls), "chords " + text(x));
    o.check(verify_report(x, r), "chord report " + text(x));
    ++total;
  }
  o.detail << total << " instances, " << radial_inf << " centers and " << axis_inf << " axes at infinity";
}

void eikonal_round_trip(Outcome& o) {
  Rng rng(4);
  for (int k = 0; k < kEikonalCases; ++k) {
    IsotropicFrame frame = sample_isotropic_frame(rng, 9);
    RatFunc ell = random_ell(rng);
    RatFunc f = build_solution(frame, ell);
    std::string tag = format_expr(f);
    o.check(eikonal_operator(f) == RatFunc::constant(kV3, frame.csq), "E(f) != c^2 for " + tag);
    o.check(flow_identity_check(f, frame.csq), "flow identity " + tag);
    o.check(gradient_first_integral_check(f), "gradient first integrals " + tag);
    EikonalSolution s = decompose_solution(f, rng.next());
    o.check(build_solution(s) == f, "rebuild " + tag);
    MultiPoly quadric = parse_poly("z1^2 + z2^2 + z3^2", kV3) - MultiPoly(kV3, frame.csq);
    o.check(annihilator_check(quadric, f), "quadric annihilator " + tag);
  }
  o.detail << kEikonalCases << " frames, ell degrees <= 4";
}

void eikonal_negative(Outcome& o) {
  Rng rng(5);
  int done = 0;
  while (done < kObstructionCases) {
    RatFunc ell = random_ell(rng);
    if (ell.is_constant()) continue;
    Gq csq = sample_nonzero_gaussian(rng, 20);
    o.check(!radial_obstruction_residual(ell, csq).is_zero(), "obstruction vanished for " + format_expr(ell));
    ++done;
  }
  for (int k = 0; k < kGradientClassifyCases; ++k) {
    RatFunc f = build_solution(sample_isotropic_frame(rng, 5), random_ell(rng));
    PolyVectorField x = clear_denominators(gradient(f));
    o.check(!std::holds_alternative<CubicChords>(classify(x, rng.next()).cls),
            "gradient foliation classified as chords for " + format_expr(f));
  }
  o.detail << kObstructionCases << " profiles, " << kGradientClassifyCases << " gradient foliations";
}

void hessian_constructors(Outcome& o) {
  Rng rng(6);
  for (int kind = 1; kind <= 2; ++kind)
    for (int k = 0; k < kHesseCases; ++k) {
      Hesse2dParams p;
      p.kind = kind;
      p.ell = sample_ratfunc(rng, kT, static_cast<int>(rng.uniform(0, 4)), static_cast<int>(rng.uniform(0, 2)), 9);
      p.pair = {sample_nonzero_gaussian(rng, 9), sample_gaussian_rational(rng, 9)};
      if (k % 2) std::swap(p.pair[0], p.pair[1]);
      p.c = {sample_gaussian_rational(rng, 9), sample_gaussian_rational(rng, 9), sample_gaussian_rational(rng, 9)};
      RatFunc f = hesse2d_construct(p);
      o.check(hessian_det(f).is_zero(), "2d kind " + std::to_string(kind) + ": " + format_expr(f));
    }
  VarSet v23 = VarSet::parse("z2,z3");
  for (int k = 0; k < kHesseCases; ++k) {
    Hesse3dParams p;
    p.kind = 1;
    p.epsilon = k % 2;
    p.phi = sample_poly(rng, v23, static_cast<int>(rng.uniform(1, 4)), 9);
    MultiPoly f = hesse3d_construct(p);
    o.check(hessian_det(RatFunc(f)).is_zero(), "3d kind 1: " + format_poly(f));
  }
  for (int k = 0; k < kHesseCases; ++k) {
    Hesse3dParams p;
    p.kind = 2;
    for (auto& a : p.a) a = sample_poly(rng, kT, static_cast<int>(rng.uniform(0, 4)), 9);
    MultiPoly f = hesse3d_construct(p);
    o.check(hessian_det(RatFunc(f)).is_zero(), "3d kind 2: " + format_poly(f));
  }
  Hesse3dParams twisted;
  twisted.kind = 2;
  twisted.a = {MultiPoly(kT), parse_poly("t^2", kT), parse_poly("t^3", kT)};
  MultiPoly f = hesse3d_construct(twisted);
  o.check(annihilator_check(parse_poly("z2^3 - z3^2", kV3), RatFunc(f)), "X2^3 - X3^2 on " + format_poly(f));
  o.detail << kHesseCases << " draws per constructor and kind";
}

void riccati_suite(Outcome& o) {
  Rng rng(7);
  auto sol = riccati_family_solution(RiccatiFamily::DoublePole);
  o.check(sol && riccati_residual(riccati_family(RiccatiFamily::DoublePole), *sol).is_zero(), "t^2 y' + y = 0");
  for (int k = 0; k < kRiccatiCases; ++k) {
    Gq lambda(rng.uniform(-8, 8));
    auto y = riccati_family_solution(RiccatiFamily::Euler, lambda);
    o.check(y && riccati_residual(riccati_family(RiccatiFamily::Euler, lambda), *y).is_zero(), "t y' + lambda y = 0, lambda " + format_scalar(lambda));
    Gq mu = sample_gaussian_rational(rng, 20);
    y = riccati_family_solution(RiccatiFamily::Quadratic, mu);
    o.check(y && riccati_residual(riccati_family(RiccatiFamily::Quadratic, mu), *y).is_zero(), "t^2 y' - y^2 = 0, mu " + format_scalar(mu));
  }
  // A pole of y at t0 != 0 of order m would give t^2 y' a pole of order
  // m + 1 there while y has order m, so t^2 y' + y = 0 forces every pole to
  // sit at t = 0. Any candidate N/D with degrees <= d is then M/t^d with
  // deg M <= 2d, and that space is searched exactly.
  const int d = kRiccatiSearchDegree;
  MultiPoly t = MultiPoly::variable(kT, 0);
  auto universal = riccati_rational_solutions(riccati_family(RiccatiFamily::DoublePole), pow(t, static_cast<unsigned>(d)), 2 * d);
  o.check(universal.empty(), "t^2 y' + y = 0 has a solution over t^" + std::to_string(d));
  // Second route, without the pole argument: sweep the denominators that
  // are products of factors (t - r), r in {0, +-1, +-i, 2}, of degree <= d.
  std::vector<Gq> roots{Gq(0), Gq(1), Gq(-1), Gq::i(), -Gq::i(), Gq(2)};
  std::size_t swept = 0;
  std::function<void(std::size_t, MultiPoly, int)> sweep = [&](std::size_t from, MultiPoly den, int deg) {
    ++swept;
    o.check(riccati_rational_solutions(riccati_family(RiccatiFamily::DoublePole), den, d).empty(),
            "solution with denominator " + format_poly(den));
    if (deg == d) return;
    for (std::size_t r = from; r < roots.size(); ++r) sweep(r, den * (t - MultiPoly(kT, roots[r])), deg + 1);
  };
  sweep(0, MultiPoly(kT, Gq(1)), 0);
  o.detail << 1 + 2 * kRiccatiCases << " family solutions; no rational solution of t^2 y' + y = 0 with degrees <= "
           << d << " (" << swept << " denominators swept)";
}

void symmetry_suite(Outcome& o) {
  Rng rng(8);
  MultiPoly z1 = MultiPoly::variable(kV3, 0), z2 = MultiPoly::variable(kV3, 1), z3 = MultiPoly::variable(kV3, 2);
  RatFunc t = RatFunc::variable(kT, "t");
  RatFunc inv = RatFunc::constant(kT, Gq(1)) / t;
  for (int k = 0; k < kSymmetryBooks; ++k) {
    RatFunc r = sample_ratfunc(rng, kT, 3, static_cast<int>(rng.uniform(0, 2)), 5);
    if (r.is_constant()) r = r + t;
    // pages z2/z1 = t, base point (0, 0, r(t)) on the axis
    PolyVectorField x = open_book_field({RatFunc(kT), compose(r, inv)});
    o.check(line_field_verified(x), "book for r = " + format_expr(r));
    for (int j = 0; j < 3; ++j) {
      Gq a1 = sample_gaussian_rational(rng, 9), c1 = sample_gaussian_rational(rng, 9),
         c2 = sample_gaussian_rational(rng, 9);
      PolyVectorField y(kV3, {z1 * a1, z2 * a1, z1 * c1 + z2 * c2});
      o.check(is_infinitesimal_symmetry(y, x), "generator fails for r = " + format_expr(r));
    }
  }
  PolyVectorField y(kV3, {z1, z2, MultiPoly(kV3)});
  for (unsigned n = 1; n <= 4; ++n) {
    MultiPoly z1n = pow(z1, n);
    PolyVectorField x(kV3, {z1n * z1, z1n * z2, z1n * z3 - pow(z2, n)});
    bool lf = line_field_verified(x);
    o.check(lf, "F_" + std::to_string(n) + " is not a line field");
    if (lf) o.check(is_infinitesimal_symmetry(y, x), "z1 d1 + z2 d2 fails on F_" + std::to_string(n));
  }
  o.detail << kSymmetryBooks << " books x 3 generators, F_1..F_4";
}

PolyVectorField random_field(Rng& rng) {
  std::vector<MultiPoly> c;
  for (int i = 0; i < 3; ++i) c.push_back(sample_poly(rng, kV3, static_cast<int>(rng.uniform(0, 2)), 5));
  return PolyVectorField(kV3, c);
}

void algebra_kernel(Outcome& o) {
  Rng rng(9);
  VarSet v2 = VarSet::coordinates(2);
  for (int k = 0; k < kKernelCases; ++k) {
    const VarSet& v = k % 2 ? kV3 : v2;
    MultiPoly p = sample_poly(rng, v, static_cast<int>(rng.uniform(0, 3)), 9);
    MultiPoly q = sample_poly(rng, v, static_cast<int>(rng.uniform(0, 3)), 9);
    MultiPoly g = sample_poly(rng, v, static_cast<int>(rng.uniform(1, 2)), 9);
    if (g.is_zero() || (p.is_zero() && q.is_zero())) continue;
    MultiPoly a = p * g, b = q * g;
    MultiPoly h = poly_gcd(a, b);
    auto qa = exact_divide(a, h), qb = exact_divide(b, h), hg = exact_divide(h, g);
    o.check(qa && qb && hg, "gcd round trip " + format_poly(a) + " , " + format_poly(b));
    auto back = exact_divide(a, g);
    o.check(back && *back == p, "exact divide " + format_poly(a));
    if (qa && qb && !(qa->is_zero() && qb->is_zero()))
      o.check(poly_gcd(*qa, *qb).is_one(), "cofactors not coprime");
  }
  for (int k = 0; k < kKernelCases; ++k) {
    PolyVectorField x = random_field(rng), y = random_field(rng), z = random_field(rng);
    PolyVectorField xy = lie_bracket(x, y), yx = lie_bracket(y, x);
    for (std::size_t i = 0; i < 3; ++i) o.check((xy[i] + yx[i]).is_zero(), "antisymmetry");
    PolyVectorField j1 = lie_bracket(x, lie_bracket(y, z)), j2 = lie_bracket(y, lie_bracket(z, x)),
                    j3 = lie_bracket(z, lie_bracket(x, y));
    for (std::size_t i = 0; i < 3; ++i) o.check((j1[i] + j2[i] + j3[i]).is_zero(), "Jacobi");
  }
  for (int k = 0; k < kKernelCases; ++k) {
    RatFunc f = sample_ratfunc(rng, kV3, static_cast<int>(rng.uniform(0, 3)), static_cast<int>(rng.uniform(0, 2)), 50);
    std::string s = format_expr(f);
    o.check(parse_expr(s, kV3) == f, "parser round trip " + s);
    o.check(format_expr(parse_expr(s, kV3)) == s, "printer fixed point " + s);
  }
  o.detail << kKernelCases << " cases each";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    void (*fn)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "Gordan-Noether suite", gordan_noether_suite},
      {2, "line-field constructors", constructor_suite},
      {3, "classifier round trip", classifier_suite},
      {4, "eikonal round trip", eikonal_round_trip},
      {5, "negative eikonal results", eikonal_negative},
      {6, "Hessian constructors", hessian_constructors},
      {7, "Riccati families", riccati_suite},
      {8, "symmetries of open books", symmetry_suite},
      {9, "algebra kernel", algebra_kernel},
  };
  auto suite_start = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.id == 9) {
      double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
      o.check(total < kSuiteBudgetSeconds, "acceptance run took " + std::to_string(total) + " s");
      o.detail << "; acceptance total " << static_cast<int>(total) << " s";
    }
    failures += !o.pass;
    std::printf("criterion %d %s: %s (%.1f s) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
