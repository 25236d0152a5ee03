#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "linefol/fields.hpp"
#include "linefol/linalg.hpp"

namespace linefol {

using Vec3 = std::array<Gq, 3>;

/// (w : x : y : z); w = 0 at infinity. Stored scaled so that the first
/// nonzero coordinate is 1, hence == is projective equality.
class Point3H {
 public:
  /// Throws InvalidArgument when all coordinates vanish.
  explicit Point3H(const std::array<Gq, 4>& coords);
  static Point3H affine(const Vec3& p);
  static Point3H at_infinity(const Vec3& direction);

  const std::array<Gq, 4>& coords() const { return c_; }
  bool is_finite() const { return !c_[0].is_zero(); }
  /// Requires is_finite().
  Vec3 affine_part() const;
  /// (x, y, z), the direction for points at infinity.
  Vec3 tail() const { return {c_[1], c_[2], c_[3]}; }

  friend bool operator==(const Point3H&, const Point3H&) = default;

 private:
  std::array<Gq, 4> c_;
};

/// Plücker coordinates (d, m): direction d and moment m = p x d for a point
/// p on the line; d = 0 for lines at infinity. Normalized like Point3H.
class Line3 {
 public:
  /// Throws InvalidArgument unless nonzero and d . m = 0.
  explicit Line3(const std::array<Gq, 6>& plucker);
  /// Throws InvalidArgument when the points coincide.
  static Line3 through(const Point3H& a, const Point3H& b);
  static Line3 from_point_direction(const Vec3& p, const Vec3& d);

  const std::array<Gq, 6>& plucker() const { return c_; }
  Vec3 direction() const { return {c_[0], c_[1], c_[2]}; }
  Vec3 moment() const { return {c_[3], c_[4], c_[5]}; }
  bool is_at_infinity() const;
  bool contains(const Point3H& p) const;

  friend bool operator==(const Line3&, const Line3&) = default;

 private:
  std::array<Gq, 6> c_;
};

/// d1 . m2 + d2 . m1; zero iff the lines meet (possibly at infinity).
Gq plucker_pairing(const Line3& a, const Line3& b);

PolyVectorField radial_field(const Point3H& center);

/// The point curve m(t) = (t z2(t), z2(t), z3(t)) in the pages z1/z2 = t.
struct OpenBookData {
  RatFunc z2_of_t;
  RatFunc z3_of_t;
};

/// Reduced field proportional to z - m(z1/z2). Throws DegenerateData.
PolyVectorField open_book_field(const OpenBookData& data);

/// Chords of the twisted cubic (t, t^2, t^3).
PolyVectorField cubic_chord_field();

/// w = matrix z + translation.
struct AffineMap {
  Matrix matrix;
  Vec3 translation;

  Vec3 apply(const Vec3& z) const;
  /// Throws SingularMatrix.
  AffineMap inverse() const;
};

/// Reduced pushforward A X(T^-1(w)). Throws SingularMatrix.
PolyVectorField conjugate_field(const PolyVectorField& x, const AffineMap& t);

/// Throws SingularPoint when X(p) = 0.
Line3 tangent_line_at(const PolyVectorField& x, const Vec3& p);

/// Throws InvalidArgument for fewer than 2 lines, DuplicateLines when two
/// entries coincide.
std::optional<Point3H> lines_common_point(const std::vector<Line3>& lines);

struct InfinitelyMany {};
/// Q(i)-rational lines meeting all four; at most two unless infinitely many.
using Transversals = std::variant<std::vector<Line3>, InfinitelyMany>;
Transversals common_transversals(const std::array<Line3, 4>& lines);

struct RadialPoint {
  Point3H center;
};
struct OpenBook {
  Line3 axis;
};
struct CubicChords {};
using FoliationClass = std::variant<CubicChords, RadialPoint, OpenBook>;

/// X = scale (z - m), or X = direction for a center at infinity.
struct RadialCertificate {
  Gq scale;
  Point3H center;
};
/// The invariant pencil: pages L1/L2 = const (axis finite) or L3 = const
/// (axis at infinity), with the exact residual of the invariance identity.
struct OpenBookCertificate {
  std::vector<std::array<Gq, 4>> planes;  // (constant, normal) per linear form
  MultiPoly residual;
  std::vector<Gq> axis_pairings;
};
/// Both exact tests rejected; the trichotomy forces the tag.
struct ChordCertificate {
  std::size_t candidates_rejected = 0;
  bool transversals_infinite = false;
};
using ClassifyCertificate = std::variant<ChordCertificate, RadialCertificate, OpenBookCertificate>;

struct ClassifyReport {
  FoliationClass cls;
  ClassifyCertificate certificate;
  std::vector<Line3> sample_lines;
  std::uint64_t seed = 0;
};

/// Throws NotALineField, SamplingExhausted, WrongArity.
ClassifyReport classify(const PolyVectorField& x, std::uint64_t seed);

/// Re-checks the certificate of a report against X with independent calls.
bool verify_report(const PolyVectorField& x, const ClassifyReport& report);

std::string class_name(const FoliationClass& c);

}  // namespace linefol
