#include "linefol/foliations.hpp"

#include <algorithm>

#include "linefol/error.hpp"

namespace linefol {

namespace {

constexpr std::size_t kSampleLines = 8;
constexpr int kPointRetries = 50;
constexpr std::int64_t kSampleHeight = 100;

template <std::size_t N>
std::array<Gq, N> normalized(std::array<Gq, N> c, const char* what) {
  std::size_t lead = 0;
  while (lead < N && c[lead].is_zero()) ++lead;
  if (lead == N) fail(ErrorCode::InvalidArgument, std::string(what) + " with all coordinates zero");
  if (!c[lead].is_one()) {
    Gq inv = c[lead].inverse();
    for (auto& x : c) x *= inv;
  }
  return c;
}

Gq dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool all_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

Matrix incidence_rows(const Line3& l) {
  // x cross d - w m = 0 and x . m = 0, unknowns (w, x1, x2, x3)
  Vec3 d = l.direction(), m = l.moment();
  return {{-m[0], Gq(), d[2], -d[1]},
          {-m[1], -d[2], Gq(), d[0]},
          {-m[2], d[1], -d[0], Gq()},
          {Gq(), m[0], m[1], m[2]}};
}

RatFunc as_univariate(const RatFunc& f) {
  if (f.vars().size() == 1) return f;
  if (f.vars().size() == 0 && f.is_constant())
    return RatFunc::constant(VarSet::parse("t"), *f.constant_value());
  fail(ErrorCode::WrongArity, "expected a univariate rational function");
}

void require_3d(const PolyVectorField& x) {
  if (x.vars().size() != 3)
    fail(ErrorCode::WrongArity, "expected a field on 3-space, got " + std::to_string(x.vars().size()) +
                                    " variables");
}

}  // namespace

Point3H::Point3H(const std::array<Gq, 4>& coords) : c_(normalized(coords, "point")) {}

Point3H Point3H::affine(const Vec3& p) { return Point3H({Gq(1), p[0], p[1], p[2]}); }

Point3H Point3H::at_infinity(const Vec3& direction) {
  return Point3H({Gq(), direction[0], direction[1], direction[2]});
}

Vec3 Point3H::affine_part() const {
  if (!is_finite()) fail(ErrorCode::InvalidArgument, "point at infinity has no affine part");
  return {c_[1], c_[2], c_[3]};
}

Line3::Line3(const std::array<Gq, 6>& plucker) : c_(normalized(plucker, "line")) {
  if (!dot(direction(), moment()).is_zero())
    fail(ErrorCode::InvalidArgument, "coordinates violate the Plucker relation");
}

Line3 Line3::through(const Point3H& a, const Point3H& b) {
  const auto& p = a.coords();
  const auto& q = b.coords();
  Vec3 x = a.tail(), y = b.tail();
  Vec3 d{p[0] * y[0] - q[0] * x[0], p[0] * y[1] - q[0] * x[1], p[0] * y[2] - q[0] * x[2]};
  Vec3 m = cross(x, y);
  if (all_zero(d) && all_zero(m)) fail(ErrorCode::InvalidArgument, "a line needs two distinct points");
  return Line3({d[0], d[1], d[2], m[0], m[1], m[2]});
}

Line3 Line3::from_point_direction(const Vec3& p, const Vec3& d) {
  return through(Point3H::affine(p), Point3H::at_infinity(d));
}

bool Line3::is_at_infinity() const { return all_zero(direction()); }

bool Line3::contains(const Point3H& p) const {
  for (const auto& row : incidence_rows(*this)) {
    Gq s;
    for (std::size_t k = 0; k < 4; ++k) s += row[k] * p.coords()[k];
    if (!s.is_zero()) return false;
  }
  return true;
}

Gq plucker_pairing(const Line3& a, const Line3& b) {
  return dot(a.direction(), b.moment()) + dot(b.direction(), a.moment());
}

PolyVectorField radial_field(const Point3H& center) {
  VarSet v = VarSet::coordinates(3);
  std::vector<MultiPoly> comps;
  if (center.is_finite()) {
    Vec3 m = center.affine_part();
    for (std::size_t i = 0; i < 3; ++i) comps.push_back(MultiPoly::variable(v, i) - MultiPoly(v, m[i]));
  } else {
    for (const auto& d : center.tail()) comps.emplace_back(v, d);
  }
  return PolyVectorField(v, std::move(comps), true);
}

PolyVectorField open_book_field(const OpenBookData& data) {
  VarSet v = VarSet::coordinates(3);
  RatFunc z1 = RatFunc::variable(v, "z1"), z2 = RatFunc::variable(v, "z2"),
          z3 = RatFunc::variable(v, "z3");
  RatFunc page = z1 / z2;
  RatFunc m2 = compose(as_univariate(data.z2_of_t), page);
  RatFunc m3 = compose(as_univariate(data.z3_of_t), page);
  RatVectorField x{v, {z1 - page * m2, z2 - m2, z3 - m3}};
  if (x.is_zero()) fail(ErrorCode::DegenerateData, "the open-book field vanishes identically");
  return clear_denominators(x);
}

PolyVectorField cubic_chord_field() {
  VarSet v = VarSet::coordinates(3);
  MultiPoly z1 = MultiPoly::variable(v, 0), z2 = MultiPoly::variable(v, 1),
            z3 = MultiPoly::variable(v, 2);
  MultiPoly a = z2 - z1 * z1;
  MultiPoly b = z3 - z1 * z2;
  return PolyVectorField(v, {a * a, a * b, b * b - z1 * a * b + z2 * a * a}, true);
}

Vec3 AffineMap::apply(const Vec3& z) const {
  Vec3 out = translation;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += matrix[i][j] * z[j];
  return out;
}

AffineMap AffineMap::inverse() const {
  Matrix inv = linefol::inverse(matrix);
  Vec3 shift{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) shift[i] -= inv[i][j] * translation[j];
  return {inv, shift};
}

PolyVectorField conjugate_field(const PolyVectorField& x, const AffineMap& t) {
  require_3d(x);
  AffineMap back = t.inverse();
  const VarSet& v = x.vars();
  std::map<std::string, RatFunc> assignment;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly img(v, back.translation[i]);
    for (std::size_t j = 0; j < 3; ++j) img += MultiPoly::variable(v, j) * back.matrix[i][j];
    assignment.emplace(v.name(i), RatFunc(img));
  }
  std::vector<MultiPoly> pulled;
  for (const auto& c : x.components()) pulled.push_back(substitute(RatFunc(c), assignment, v).num());
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < 3; ++i) {
    MultiPoly s(v);
    for (std::size_t j = 0; j < 3; ++j)
      if (!t.matrix[i][j].is_zero()) s += pulled[j] * t.matrix[i][j];
    comps.push_back(std::move(s));
  }
  return primitive_reduce(PolyVectorField(v, std::move(comps))).field;
}

Line3 tangent_line_at(const PolyVectorField& x, const Vec3& p) {
  require_3d(x);
  std::vector<Gq> d = x.at(p);
  Vec3 dir{d[0], d[1], d[2]};
  if (all_zero(dir)) fail(ErrorCode::SingularPoint, "the field vanishes at the point");
  return Line3::from_point_direction(p, dir);
}

std::optional<Point3H> lines_common_point(const std::vector<Line3>& lines) {
  if (lines.size() < 2) fail(ErrorCode::InvalidArgument, "need at least two lines");
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i] == lines[j])
        fail(ErrorCode::DuplicateLines, "lines " + std::to_string(i) + " and " + std::to_string(j) +
                                            " coincide");
  Matrix rows;
  for (const auto& l : lines)
    for (auto& r : incidence_rows(l)) rows.push_back(std::move(r));
  auto ker = kernel(std::move(rows), 4);
  if (ker.empty()) return std::nullopt;
  if (ker.size() > 1) fail(ErrorCode::InternalInconsistency, "distinct lines share more than a point");
  return Point3H({ker[0][0], ker[0][1], ker[0][2], ker[0][3]});
}

namespace {

Gq plucker_form(const std::vector<Gq>& a, const std::vector<Gq>& b) {
  Gq s;
  for (std::size_t k = 0; k < 3; ++k) s += a[k] * b[k + 3] + b[k] * a[k + 3];
  return s;
}

Line3 to_line(const std::vector<Gq>& a, const std::vector<Gq>& b, const Gq& s, const Gq& t) {
  std::array<Gq, 6> c;
  for (std::size_t k = 0; k < 6; ++k) c[k] = s * a[k] + t * b[k];
  return Line3(c);
}

}  // namespace

Transversals common_transversals(const std::array<Line3, 4>& lines) {
  Matrix rows;
  for (const auto& l : lines) {
    Vec3 d = l.direction(), m = l.moment();
    rows.push_back({m[0], m[1], m[2], d[0], d[1], d[2]});
  }
  auto ker = kernel(std::move(rows), 6);
  if (ker.size() > 2) return InfinitelyMany{};
  const auto& k1 = ker[0];
  const auto& k2 = ker[1];
  // q(s, t) = q11 s^2 + q12 s t + q22 t^2 on the pencil s k1 + t k2
  Gq q11 = plucker_form(k1, k1) / Gq(2), q22 = plucker_form(k2, k2) / Gq(2);
  Gq q12 = plucker_form(k1, k2);
  if (q11.is_zero() && q12.is_zero() && q22.is_zero()) return InfinitelyMany{};
  std::vector<Line3> out;
  auto add = [&](const Gq& s, const Gq& t) {
    Line3 l = to_line(k1, k2, s, t);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  if (q22.is_zero()) {
    add(Gq(0), Gq(1));
    if (!q12.is_zero()) add(q12, -q11);
    return out;
  }
  // roots t/s of q22 r^2 + q12 r + q11
  Gq disc = q12 * q12 - Gq(4) * q11 * q22;
  auto root = sqrt_exact(disc);
  if (!root) return out;
  Gq denom = Gq(2) * q22;
  add(Gq(1), (-q12 + *root) / denom);
  add(Gq(1), (-q12 - *root) / denom);
  return out;
}

namespace {

// X = scale (z - m), or X constant.
std::optional<RadialCertificate> radial_shape(const PolyVectorField& x) {
  const std::size_t n = x.size();
  if (x.max_degree() > 1) return std::nullopt;
  Matrix lin(n, std::vector<Gq>(n));
  std::vector<Gq> k(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : x[i].terms()) {
      if (t.mono.degree() == 0) {
        k[i] = t.coeff;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (t.mono.exp[j]) lin[i][j] = t.coeff;
    }
  std::array<Gq, 4> h{};
  Gq scale = lin[0][0];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lin[i][j] != (i == j ? scale : Gq())) return std::nullopt;
  if (scale.is_zero()) {
    for (std::size_t i = 0; i < n; ++i) h[i + 1] = k[i];
    Point3H center(h);
    std::size_t lead = 0;
    while (k[lead].is_zero()) ++lead;
    return RadialCertificate{k[lead], center};
  }
  h[0] = Gq(1);
  for (std::size_t i = 0; i < n; ++i) h[i + 1] = -k[i] / scale;
  return RadialCertificate{scale, Point3H(h)};
}

MultiPoly linear_form(const VarSet& v, const std::array<Gq, 4>& plane) {
  MultiPoly l(v, plane[0]);
  for (std::size_t i = 0; i < 3; ++i) l += MultiPoly::variable(v, i) * plane[i + 1];
  return l;
}

MultiPoly directional(const PolyVectorField& x, const std::array<Gq, 4>& plane) {
  MultiPoly s(x.vars());
  for (std::size_t i = 0; i < 3; ++i)
    if (!plane[i + 1].is_zero()) s += x[i] * plane[i + 1];
  return s;
}

// Planes through the axis and the residual of the pencil-invariance identity.
OpenBookCertificate pencil_certificate(const PolyVectorField& x, const Line3& axis) {
  OpenBookCertificate cert;
  Vec3 d = axis.direction(), m = axis.moment();
  if (axis.is_at_infinity()) {
    cert.planes.push_back({Gq(), m[0], m[1], m[2]});
    cert.residual = directional(x, cert.planes[0]);
    return cert;
  }
  // p with p x d = m
  Matrix cx{{Gq(), d[2], -d[1]}, {-d[2], Gq(), d[0]}, {d[1], -d[0], Gq()}};
  auto p = solve(cx, {m[0], m[1], m[2]});
  if (!p) fail(ErrorCode::InternalInconsistency, "axis moment is not attained");
  Vec3 pt{(*p)[0], (*p)[1], (*p)[2]};
  for (const auto& n : kernel(Matrix{{d[0], d[1], d[2]}}, 3))
    cert.planes.push_back({-dot({n[0], n[1], n[2]}, pt), n[0], n[1], n[2]});
  const VarSet& v = x.vars();
  MultiPoly l1 = linear_form(v, cert.planes[0]), l2 = linear_form(v, cert.planes[1]);
  cert.residual = l2 * directional(x, cert.planes[0]) - l1 * directional(x, cert.planes[1]);
  return cert;
}

Point3H embed_plane(const Point3H& p) {
  const auto& c = p.coords();
  return Point3H({c[0], c[1], c[2], Gq()});
}

}  // namespace

ClassifyReport classify(const PolyVectorField& x, std::uint64_t seed) {
  if (x.vars().size() != 2 && x.vars().size() != 3)
    fail(ErrorCode::WrongArity, "classify expects 2 or 3 variables");
  if (!line_field_certificate(x).holds)
    fail(ErrorCode::NotALineField, "the trajectories are not contained in lines");
  PolyVectorField xr = primitive_reduce(x).field;
  ClassifyReport report;
  report.seed = seed;

  if (auto radial = radial_shape(xr)) {
    if (x.vars().size() == 2) radial->center = embed_plane(radial->center);
    report.cls = RadialPoint{radial->center};
    report.certificate = *radial;
    return report;
  }
  if (x.vars().size() == 2)
    fail(ErrorCode::InternalInconsistency, "a planar line field that is not a pencil");

  Rng rng(seed);
  for (std::size_t k = 0; k < kSampleLines; ++k) {
    bool found = false;
    for (int attempt = 0; attempt < kPointRetries && !found; ++attempt) {
      Vec3 p;
      for (auto& c : p) c = sample_gaussian_rational(rng, kSampleHeight);
      std::vector<Gq> d = xr.at(p);
      if (all_zero({d[0], d[1], d[2]})) continue;
      report.sample_lines.push_back(tangent_line_at(xr, p));
      found = true;
    }
    if (!found) fail(ErrorCode::SamplingExhausted, "no regular point found");
  }

  const std::array<std::array<std::size_t, 4>, 4> quads{{{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 2, 4, 6}, {1, 3, 5, 7}}};
  ChordCertificate chords;
  std::vector<Line3> tried;
  for (const auto& q : quads) {
    const auto& s = report.sample_lines;
    auto tr = common_transversals({s[q[0]], s[q[1]], s[q[2]], s[q[3]]});
    if (std::holds_alternative<InfinitelyMany>(tr)) {
      chords.transversals_infinite = true;
      continue;
    }
    for (const auto& axis : std::get<std::vector<Line3>>(tr)) {
      if (std::find(tried.begin(), tried.end(), axis) != tried.end()) continue;
      tried.push_back(axis);
      std::vector<Gq> pairings;
      bool meets = true;
      for (const auto& l : s) {
        pairings.push_back(plucker_pairing(axis, l));
        meets = meets && pairings.back().is_zero();
      }
      if (meets) {
        OpenBookCertificate cert = pencil_certificate(xr, axis);
        if (cert.residual.is_zero()) {
          cert.axis_pairings = std::move(pairings);
          report.cls = OpenBook{axis};
          report.certificate = std::move(cert);
          return report;
        }
      }
      ++chords.candidates_rejected;
    }
  }
  report.cls = CubicChords{};
  report.certificate = chords;
  return report;
}

bool verify_report(const PolyVectorField& x, const ClassifyReport& report) {
  if (!line_field_certificate(x).holds) return false;
  PolyVectorField xr = primitive_reduce(x).field;
  const std::size_t n = x.vars().size();
  if (const auto* r = std::get_if<RadialCertificate>(&report.certificate)) {
    const auto* cls = std::get_if<RadialPoint>(&report.cls);
    if (!cls || !(cls->center == r->center)) return false;
    const auto& c = r->center.coords();
    for (std::size_t i = 0; i < n; ++i) {
      MultiPoly expect = r->center.is_finite()
                             ? (MultiPoly::variable(x.vars(), i) - MultiPoly(x.vars(), c[i + 1])) * r->scale
                             : MultiPoly(x.vars(), c[i + 1] * r->scale);
      if (xr[i] != expect) return false;
    }
    return true;
  }
  if (const auto* b = std::get_if<OpenBookCertificate>(&report.certificate)) {
    const auto* cls = std::get_if<OpenBook>(&report.cls);
    if (!cls) return false;
    for (const auto& l : report.sample_lines)
      if (!plucker_pairing(cls->axis, l).is_zero()) return false;
    // each plane vanishes on two points spanning the axis
    auto span = kernel(incidence_rows(cls->axis), 4);
    if (span.size() != 2) return false;
    for (const auto& pl : b->planes)
      for (const auto& pt : span) {
        Gq s;
        for (std::size_t k = 0; k < 4; ++k) s += pl[k] * pt[k];
        if (!s.is_zero()) return false;
      }
    return pencil_certificate(xr, cls->axis).residual.is_zero();
  }
  if (!std::holds_alternative<CubicChords>(report.cls)) return false;
  return n == 3 && !radial_shape(xr).has_value();
}

std::string class_name(const FoliationClass& c) {
  if (std::holds_alternative<RadialPoint>(c)) return "RadialPoint";
  if (std::holds_alternative<OpenBook>(c)) return "OpenBook";
  return "CubicChords";
}

}  // namespace linefol
