#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ellchi {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline long gcd_l(long a, long b) {
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

inline long lcm_l(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd_l(a, b)) * b;
}

// Nonnegative remainder of a mod m, m > 0.
inline long mod_l(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mod_inverse(long a, long m);
long mod_pow(long base, long exp, long m);

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Kronecker symbol (a|n), fully general.
inline int kronecker(const Int& a, const Int& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker_l(long a, long n) { return kronecker(Int(a), Int(n)); }

bool is_prime(const Int& n);
bool is_prime_l(long n);

// Primes up to (and including) bound, cached and extended on demand.
const std::vector<long>& primes_up_to(long bound);

// Factorization as sorted (prime, exponent) pairs.  Intended for the desk
// scale of this project; throws if a cofactor above the trial-division
// range is composite and cannot be certified prime.
std::vector<std::pair<Int, int>> factor(Int n);
std::vector<std::pair<long, int>> factor_l(long n);

long euler_phi_l(long n);

// Multiplicative order of a modulo m, gcd(a,m)=1.
long multiplicative_order(long a, long m);

// Smallest primitive root modulo p^k (p odd prime).
long primitive_root_odd_prime_power(long p, int k);

long valuation_l(long n, long p);
int valuation(const Int& n, const Int& p);
Int remove_factor(const Int& n, const Int& p, int& val);

// CRT for two coprime moduli.
long crt_pair(long r1, long m1, long r2, long m2);

std::string format_rational(const Rat& q);
Rat parse_rational(const std::string& s);

}  // namespace ellchi
