#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linefol/fields.hpp"

namespace linefol {

/// Coefficients of u . z under the bilinear (not Hermitian) pairing.
struct LinearForm {
  std::array<Gq, 3> coeffs;

  bool is_zero() const;
  MultiPoly as_poly(const VarSet& vars) const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

Gq pairing(const LinearForm& u, const LinearForm& v);
inline Gq norm2(const LinearForm& u) { return pairing(u, u); }

/// <alpha|alpha> = c^2, <beta|beta> = 0, <alpha|beta> = 0. Only c^2 is kept:
/// a decomposed solution may have c outside Q(i).
struct IsotropicFrame {
  LinearForm alpha;
  LinearForm beta;
  Gq csq;

  bool affine_degenerate() const { return beta.is_zero(); }
  /// Throws InvalidArgument when an identity fails.
  void validate() const;
};

struct EikonalSolution {
  IsotropicFrame frame;
  RatFunc ell;  // univariate in t
};

/// Sum of squared partials.
RatFunc eikonal_operator(const RatFunc& f);

/// c^2 when E(f) is constant.
std::optional<Gq> is_eikonal_solution(const RatFunc& f);

/// beta = lambda (1 - u^2, 2u, i(1 + u^2)), alpha = s (2u, u^2 - 1, 0),
/// c = s (1 + u^2), redrawing degenerate u, lambda, s.
IsotropicFrame sample_isotropic_frame(Rng& rng, std::int64_t height);

/// alpha . z + ell(beta . z). Throws InvalidArgument for a bad frame,
/// PoleOnAllOfSpace when ell has a pole at beta . z identically.
RatFunc build_solution(const IsotropicFrame& frame, const RatFunc& ell);
RatFunc build_solution(const EikonalSolution& s);

/// Inverse of build_solution for f over z1, z2, z3: beta has leading
/// coefficient 1 (or is 0 when grad f is constant), alpha is grad f at a
/// base point drawn from `seed`, ell is read off the line t e_k where
/// beta_k is the leading coefficient. Throws NotASolution, StructureViolation,
/// SamplingExhausted, WrongArity.
EikonalSolution decompose_solution(const RatFunc& f, std::uint64_t seed = 0);

/// f(z + t grad f(z)) - f(z) - csq t vanishes identically. Decided through
/// the equivalent identities X(f) = csq and X(df/dz_i) = 0 for X = grad f:
/// once the partials are first integrals, the trajectory through z is the
/// line z + t grad f(z), along which f grows at rate X(f).
bool flow_identity_check(const RatFunc& f, const Gq& csq);

/// Each df/dz_i is constant along z + t grad f(z), i.e. X(df/dz_i) = 0.
/// Throws ConstantFunction.
bool gradient_first_integral_check(const RatFunc& f);

/// The same identities by literal substitution over z1..zn, t. Exact but
/// expensive beyond small degrees.
RatFunc flow_residual_symbolic(const RatFunc& f, const Gq& csq);
std::vector<RatFunc> gradient_drift_symbolic(const RatFunc& f);

/// Literal substitution with z fixed at `point`, as functions of t.
/// Throws PoleAtPoint when grad f has a pole there.
RatFunc flow_residual_at(const RatFunc& f, const Gq& csq, std::span<const Gq> point);
std::vector<RatFunc> gradient_drift_at(const RatFunc& f, std::span<const Gq> point);

/// 4 t ell'(t)^2 - csq.
RatFunc radial_obstruction_residual(const RatFunc& ell, const Gq& csq);

/// Whether |beta|^2 t^2 + 2 <alpha|beta> t - |alpha|^2 is the square of a
/// polynomial of degree <= 1 over C.
bool frame_quadratic_is_square(const LinearForm& alpha, const LinearForm& beta);

/// a(t) y' - (c0 + c3 y + a3 y^2) with deg a <= 2.
struct RiccatiEquation {
  MultiPoly a;
  Gq c0;
  Gq c3;
  Gq a3;

  /// Throws InvalidArgument when deg a > 2, a is not univariate, or all
  /// coefficients vanish.
  void validate() const;
};

RatFunc riccati_residual(const RiccatiEquation& eq, const RatFunc& y);

/// DoublePole: t^2 y' + y = 0. Euler: t y' + param y = 0.
/// Quadratic: t^2 y' - y^2 = 0.
enum class RiccatiFamily { DoublePole, Euler, Quadratic };

/// Accepts "double-pole", "euler", "quadratic"; InvalidArgument otherwise.
RiccatiFamily parse_riccati_family(const std::string& name);

RiccatiEquation riccati_family(RiccatiFamily which, const Gq& param = Gq());

/// DoublePole: 0. Euler: t^(-param) when param is an integer, absent
/// otherwise. Quadratic: t / (1 + param t).
std::optional<RatFunc> riccati_family_solution(RiccatiFamily which, const Gq& param = Gq());

/// For a linear homogeneous equation (c0 = a3 = 0): a basis of the
/// numerators N with deg N <= num_degree such that N/den is a solution,
/// found as the kernel of the coefficient map N -> a(N'den - N den') - c3 N den.
/// Throws InvalidArgument for a nonlinear or inhomogeneous equation or a
/// zero denominator.
std::vector<MultiPoly> riccati_rational_solutions(const RiccatiEquation& eq, const MultiPoly& den,
                                                  int num_degree);

}  // namespace linefol
