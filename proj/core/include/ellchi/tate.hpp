#pragma once

#include <array>

#include "ellchi/curve.hpp"
#include "ellchi/localfield.hpp"

namespace ellchi {

struct WildCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tate's algorithm for the given integral model over Z_p (handles every
// residue characteristic; conductor exponent via Ogg's formula).
LocalData tate_local_int(const std::array<Int, 5>& a, long p);

// Tate's algorithm for the model base-changed to the totally ramified
// extension cut out by the given Eisenstein polynomial.
LocalData tate_over_field(const std::array<Int, 5>& a, long p,
                          const std::vector<Int>& eisenstein);

// Base change to the canonical degree-e totally ramified extension at p
// (the ramified part of the cyclotomic tower; for e | p-1 this is the
// subfield of Q_p(zeta_p), otherwise x^e + p).  Requires gcd(e, p) = 1.
// For e = 2 the result is cross-checked against the quadratic-twist
// criterion.
LocalData tate_over_tame_extension(const CurveData& curve, long p, long e);

// Reduction data of `curve` over the totally ramified extension cut out by
// the subgroup H of (Z/p^k)^x via Gaussian periods; covers wild cases.
LocalData tate_over_cyclotomic_subfield(const CurveData& curve, long p, int k,
                                        const std::vector<long>& H);

}  // namespace ellchi
