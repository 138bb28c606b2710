#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ellchi/ints.hpp"

namespace ellchi {

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Totally ramified extension O = Z_p[pi]/(g(pi)) of degree e with g monic
// Eisenstein; e = 1 with g = x - p recovers Z_p itself.  Coefficients are
// kept modulo p^prec.
class LocalField {
 public:
  LocalField(long p, std::vector<Int> eisenstein, long prec);

  long p() const { return p_; }
  long e() const { return e_; }
  long prec() const { return prec_; }          // in p-units
  long prec_pi() const { return e_ * prec_; }  // in pi-units
  const Int& p_pow_prec() const { return p_prec_; }
  const std::vector<Int>& eisenstein() const { return eis_; }

  // -(x^{e-1} + a_{e-1} x^{e-2} + ... + a_1) / (a_0/p), i.e. p/pi.
  const std::vector<Int>& p_over_pi() const { return p_over_pi_; }

 private:
  long p_, e_, prec_;
  Int p_prec_;
  std::vector<Int> eis_;
  std::vector<Int> p_over_pi_;
};

class LocalElt {
 public:
  LocalElt() : f_(nullptr) {}
  LocalElt(const LocalField* f, const Int& constant);
  static LocalElt zero(const LocalField* f) { return LocalElt(f, Int(0)); }
  static LocalElt pi(const LocalField* f);

  const LocalField& field() const { return *f_; }

  // Valuation in pi-units; nullopt when indistinguishable from 0 at the
  // working precision.
  std::optional<long> val() const;

  // True when val() >= k is certain at working precision.
  bool val_at_least(long k) const;
  // Exact valuation; throws PrecisionExhausted when the element looks like 0.
  long val_exact() const;

  bool is_unit() const { return val_at_least(0) && !val_at_least(1); }

  long residue() const;  // image in F_p = O/pi

  LocalElt div_pi(long k = 1) const;  // exact division by pi^k

  friend LocalElt operator+(const LocalElt& a, const LocalElt& b);
  friend LocalElt operator-(const LocalElt& a, const LocalElt& b);
  friend LocalElt operator*(const LocalElt& a, const LocalElt& b);
  friend LocalElt operator-(const LocalElt& a);
  LocalElt& operator+=(const LocalElt& o) { return *this = *this + o; }
  LocalElt& operator-=(const LocalElt& o) { return *this = *this - o; }

  LocalElt times_long(long s) const;

 private:
  LocalElt(const LocalField* f, std::vector<Int> c)
      : f_(f), c_(std::move(c)) {}
  const LocalField* f_;
  std::vector<Int> c_;  // length e, each in [0, p^prec)
};

// Eisenstein polynomial (monic, coefficients constant-first) for the
// degree-e totally ramified subfield of Q_p(zeta_{p^k}) fixed by the
// subgroup H of (Z/p^k)^x, constructed from Gaussian periods.  H must have
// index e = phi(p^k)/|H|.
std::vector<Int> eisenstein_from_gaussian_periods(long p, int k,
                                                  const std::vector<long>& H);

}  // namespace ellchi
