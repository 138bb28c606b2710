#pragma once

#include <stdexcept>

#include "ellchi/bigfloat.hpp"
#include "ellchi/ints.hpp"

namespace ellchi {

struct NoCandidate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AmbiguousReconstruction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unique rational p/q with q <= denominator_cap and |x - p/q| <= tolerance,
// found by continued fractions.  The winner must beat every other candidate
// with q <= cap by a factor of 10^6 in distance, otherwise
// AmbiguousReconstruction is thrown; if nothing fits, NoCandidate.
Rat rational_reconstruct(const BigFloat& x, const Int& denominator_cap,
                         const BigFloat& tolerance);

Rat rational_reconstruct_exact(const Rat& x, const Int& denominator_cap,
                               const Rat& tolerance);

}  // namespace ellchi
