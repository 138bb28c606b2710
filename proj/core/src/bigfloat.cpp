#include "ellchi/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace ellchi {

Rat to_exact_rat_helper(mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return Rat(0);
  Int mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
  Rat r(mant);
  Rat two(2);
  if (e >= 0) {
    r *= Rat(pow_int(Int(2), static_cast<unsigned long>(e)));
  } else {
    r /= Rat(pow_int(Int(2), static_cast<unsigned long>(-e)));
  }
  r.canonicalize();
  return r;
}

Rat BigFloat::to_exact_rat() const { return to_exact_rat_helper(v_); }

std::string BigFloat::str(int digits) const {
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%dRg", digits);
  char* s = nullptr;
  mpfr_asprintf(&s, fmt, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

BigComplex csqrt(const BigComplex& a) {
  long prec = a.prec();
  if (a.im.is_zero()) {
    if (a.re.sign() >= 0) return {sqrt(a.re), BigFloat(prec)};
    return {BigFloat(prec), sqrt(-a.re)};
  }
  BigFloat r = abs(a);
  BigFloat half = BigFloat::from_rat(Rat(1, 2), prec);
  BigFloat u = sqrt(half * (r + a.re));
  BigFloat v = sqrt(half * (r - a.re));
  if (a.im.sign() < 0) v = -v;
  return {u, v};
}

BigComplex root_of_unity(long k, long n, long prec) {
  Rat frac(2 * k, n);
  frac.canonicalize();
  BigFloat ang = BigFloat::pi(prec) * BigFloat::from_rat(frac, prec);
  return {cos(ang), sin(ang)};
}

BigComplex complex_agm(BigComplex a, BigComplex b) {
  long prec = std::max(a.prec(), b.prec());
  BigFloat eps = ldexp(BigFloat::from_long(1, prec), -(prec - 8));
  BigFloat half = BigFloat::from_rat(Rat(1, 2), prec);
  for (int it = 0; it < 4 * 64 + static_cast<int>(prec); ++it) {
    BigComplex a1 = half * (a + b);
    BigComplex prod = a * b;
    BigComplex b1 = csqrt(prod);
    // Pick the square root with |a1 - b1| <= |a1 + b1| (ties: Im(b1/a1) >= 0).
    BigFloat d_minus = abs2(a1 - b1);
    BigFloat d_plus = abs2(a1 + b1);
    if (d_minus > d_plus) b1 = -b1;
    a = a1;
    b = b1;
    if (abs(a - b) <= eps * abs(a)) break;
  }
  return a;
}

}  // namespace ellchi
