#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ellchi/ints.hpp"

namespace ellchi {

struct SingularCurve : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Reduction { Good, SplitMult, NonsplitMult, Additive };

struct LocalData {
  long p = 0;
  std::string kodaira;       // "I0", "I5", "I3*", "II", ..., "II*"
  Reduction cls = Reduction::Good;
  long conductor_exponent = 0;
  long vdisc = 0;            // valuation of the local minimal discriminant
  long n = 0;                // n of I_n / I_n*
  // residues a1..a6 mod p of the locally minimal model (meaningful for Good)
  std::array<long, 5> model_residues{0, 0, 0, 0, 0};
};

// Integral Weierstrass model, globally minimal.  Construct via
// minimal_model().
class CurveData {
 public:
  Int a1, a2, a3, a4, a6;
  Int b2, b4, b6, b8, c4, c6, disc;
  Rat j;
  Int conductor;
  // (u, r, s, t) carrying the input model to this minimal one.
  Rat u_tf;
  Rat r_tf, s_tf, t_tf;

  std::array<Int, 5> coeffs() const { return {a1, a2, a3, a4, a6}; }
  std::vector<std::pair<Int, int>> bad_primes() const;  // factorization of disc
  const LocalData& local_data(long p) const;            // cached Tate output

  // Trace of Frobenius; exhaustive count for good p, +-1 / 0 at bad p.
  long ap(long p) const;
  // #E(F_{p^r}) via the Weil recursion on ap (good p only).
  Int count_points_ext(long p, long r) const;

  long torsion_order() const;  // over Q, Lutz-Nagell within Mazur's bound

  bool disc_is_square() const { return is_perfect_square(disc); }
  bool has_two_isogeny() const;  // rational root of the 2-division cubic

  std::string label_hint;  // optional Cremona-style label from the lookup file

 private:
  mutable std::map<long, LocalData> local_cache_;
  mutable std::map<long, long> ap_cache_;
  mutable std::mutex cache_mutex_;

 public:
  CurveData() = default;
  CurveData(const CurveData& o);
  CurveData& operator=(const CurveData& o);
};

// Invariants of a (not necessarily minimal) integer model.
struct ModelInvariants {
  Int b2, b4, b6, b8, c4, c6, disc;
};
ModelInvariants model_invariants(const std::array<Int, 5>& a);

// Globally minimal model via Laska-Kraus-Connell; accepts rational input
// coefficients.  Throws SingularCurve when the discriminant vanishes.
CurveData minimal_model(const std::array<Rat, 5>& a);
CurveData minimal_model_int(const std::array<Int, 5>& a);

// Minimal model with the given invariants; the pair must come from some
// integral model (c4^3 - c6^2 = 1728*disc with disc != 0).
std::optional<CurveData> curve_from_c4c6(const Int& c4, const Int& c6);

// Quadratic twist by a fundamental discriminant, returned minimal.
CurveData quadratic_twist(const CurveData& e, const Int& d);

}  // namespace ellchi
