#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ellchi/bigfloat.hpp"
#include "ellchi/ints.hpp"

namespace ellchi {

// d-th cyclotomic polynomial, dense coefficients, constant term first.
const std::vector<Int>& cyclotomic_polynomial(long d);

// Exact element of Q(zeta_d), stored reduced modulo Phi_d on the power
// basis 1, zeta, ..., zeta^(phi(d)-1).  The power basis is an integral
// basis of Z[zeta_d], so integrality is a coefficient check.
class CycloNumber {
 public:
  CycloNumber() : order_(1), coeffs_(1, Rat(0)) {}
  explicit CycloNumber(const Rat& q) : order_(1), coeffs_(1, q) {}
  explicit CycloNumber(long n) : order_(1), coeffs_(1, Rat(n)) {}

  // Reduce a raw coefficient vector on zeta_d^0 .. zeta_d^(k) (any length;
  // exponents are first folded mod d).
  static CycloNumber reduce(long d, const std::vector<Rat>& raw);

  // zeta_d^k.
  static CycloNumber zeta_power(long d, long k);

  long order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // coefficient of zeta^0
  // Value as a rational; throws if not rational.
  Rat as_rational() const;

  bool is_integral() const;

  CycloNumber lifted_to(long new_order) const;

  // Express this element in Q(zeta_new_order) when it actually lies there
  // (new_order | order); throws std::domain_error otherwise.
  CycloNumber descended_to(long new_order) const;

  // Smallest d0 | order with the element in Q(zeta_d0), and the element
  // rewritten there.
  CycloNumber minimized() const;

  // Galois action zeta |-> zeta^sigma, gcd(sigma, order)=1.
  CycloNumber galois(long sigma) const;
  CycloNumber conj() const { return order_ <= 2 ? *this : galois(order_ - 1); }

  // Product over all Galois conjugates; a rational number.
  Rat norm() const;

  CycloNumber inverse() const;  // throws on zero

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a);
  friend CycloNumber operator*(const Rat& s, const CycloNumber& a);
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) {
    return !(a == b);
  }

  BigComplex embed(long prec_bits) const;  // zeta_d -> exp(2*pi*i/d)

  // Compact human-readable form, e.g. "(2+4z+z^2+3z^3)/5" with z = zeta_d.
  std::string str() const;

  nlohmann::json to_json() const;
  static CycloNumber from_json(const nlohmann::json& j);

 private:
  CycloNumber(long order, std::vector<Rat> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}

  long order_;
  std::vector<Rat> coeffs_;
};

inline CycloNumber operator*(const CycloNumber& a, const Rat& s) { return s * a; }

// Exact square root of a nonzero integer n inside a cyclotomic field:
// returns x with x*x == n.  The order of x divides lcm(8, odd primes of n).
CycloNumber sqrt_of_integer_cyclotomic(const Int& n);

// Both roots of x^2 - t*x + q over the relevant cyclotomic field
// (requires t^2 - 4q <= 0 so the roots are Weil-like); first root uses the
// principal square root orientation of sqrt_of_integer_cyclotomic.
std::pair<CycloNumber, CycloNumber> quadratic_roots_cyclotomic(const Int& t,
                                                               const Int& q);

}  // namespace ellchi
