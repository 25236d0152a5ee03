#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "linefol/ratfunc.hpp"

namespace linefol {

/// Matrix of second partials, row-major.
std::vector<std::vector<RatFunc>> hessian(const RatFunc& f);

/// Exact det Hess f.
RatFunc hessian_det(const RatFunc& f);

/// f11 f22 - f12^2 - 1. Throws WrongArity unless f has 2 variables.
RatFunc monge_ampere_residual(const RatFunc& f);

/// (df/dz1, ..., df/dzn). Throws ConstantFunction.
std::vector<RatFunc> gauss_map(const RatFunc& f);

/// Largest rank of Hess f over `trials` random points of height `height`,
/// retrying up to 20 times per trial when a point hits a pole. A lower bound
/// on the generic rank of the Gauss map. Throws SamplingExhausted.
std::size_t gauss_generic_rank(const RatFunc& f, Rng& rng, int trials, std::int64_t height = 100);

/// Whether P(df/dz1, ..., df/dzn) vanishes identically; the i-th variable of
/// P stands for X_i. Throws ArityMismatch.
bool annihilator_check(const MultiPoly& p, const RatFunc& f);

/// z1^2 z3 + z1 z2 z4 + z2^2 z5.
MultiPoly gordan_noether();

/// da/dz1 + a da/dz2. Throws WrongArity.
RatFunc burgers_residual(const RatFunc& a);

struct Hesse2dParams {
  int kind = 1;
  RatFunc ell;                  // univariate
  std::array<Gq, 2> pair;       // (a1, a2) for kind 1, (b1, b2) for kind 2
  std::array<Gq, 3> c;
};

/// Kind 1: ell(a1 z1 + a2 z2) + c1 z1 + c2 z2 + c3.
/// Kind 2: ell((z1 - b1)/(z2 - b2)) (z2 - b2) + c1 z1 + c2 z2 + c3.
/// Throws DegenerateDirection when a = 0 for kind 1.
RatFunc hesse2d_construct(const Hesse2dParams& params);

struct Hesse3dParams {
  int kind = 1;
  int epsilon = 0;              // kind 1, 0 or 1
  MultiPoly phi;                // kind 1, in z2 and z3 only
  std::array<MultiPoly, 3> a;   // kind 2, univariate
};

/// Kind 1: epsilon z1 + phi(z2, z3). Kind 2: a1(z1) + z2 a2(z1) + z3 a3(z1).
MultiPoly hesse3d_construct(const Hesse3dParams& params);

}  // namespace linefol
