#include "ellchi/tate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ellchi {

namespace {

struct LocalModel {
  const LocalField* F;
  LocalElt a1, a2, a3, a4, a6;

  LocalElt b2() const { return a1 * a1 + (a2 + a2 + a2 + a2); }
  LocalElt b4() const { return a4 + a4 + a1 * a3; }
  LocalElt b6() const { return a3 * a3 + (a6 + a6 + a6 + a6); }
  LocalElt b8() const {
    LocalElt t = a1 * a1 * a6;
    t += (a2 * a6).times_long(4);
    t -= a1 * a3 * a4;
    t += a2 * a3 * a3;
    t -= a4 * a4;
    return t;
  }
  LocalElt disc() const {
    LocalElt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    LocalElt d = -(B2 * B2 * B8);
    d -= (B4 * B4 * B4).times_long(8);
    d -= (B6 * B6).times_long(27);
    d += (B2 * B4 * B6).times_long(9);
    return d;
  }

  // x = x' + r, y = y' + s x' + t
  void translate(const LocalElt& r, const LocalElt& s, const LocalElt& t) {
    LocalElt na1 = a1 + s + s;
    LocalElt na2 = a2 - s * a1 + r.times_long(3) - s * s;
    LocalElt na3 = a3 + r * a1 + t + t;
    LocalElt na4 = a4 - s * a3 + (r * a2).times_long(2) - (t + r * s) * a1 +
                   (r * r).times_long(3) - (s * t).times_long(2);
    LocalElt na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t -
                   r * t * a1;
    a1 = na1; a2 = na2; a3 = na3; a4 = na4; a6 = na6;
  }

  void scale_down_by_pi() {  // u = pi: a_i -> a_i / pi^i
    a1 = a1.div_pi(1);
    a2 = a2.div_pi(2);
    a3 = a3.div_pi(3);
    a4 = a4.div_pi(4);
    a6 = a6.div_pi(6);
  }
};

long mod_p(long x, long p) { return ((x % p) + p) % p; }

// roots with multiplicity of a cubic T^3+c2T^2+c1T+c0 over F_p
struct CubicRoots {
  std::optional<long> double_root;
  std::optional<long> triple_root;
  bool has_multiple() const { return double_root || triple_root; }
};

CubicRoots cubic_structure(long c2, long c1, long c0, long p) {
  CubicRoots out;
  for (long t = 0; t < p; ++t) {
    long v = mod_p(((t + c2) * t + c1) % p * t % p + c0, p);
    if (v != 0) continue;
    // synthetic division by (T - t) twice to get multiplicity
    long q2 = 1;
    long q1 = mod_p(c2 + t, p);
    long q0 = mod_p(c1 + t * q1, p);
    // remainder of quotient at t: q2 t^2 + q1 t + q0
    long r2 = mod_p((q2 * t + q1) % p * t % p + q0, p);
    if (r2 != 0) continue;  // simple root
    // divide once more
    long s1 = q2;
    long s0 = mod_p(q1 + t * s1, p);
    long r3 = mod_p(s1 * t + s0, p);
    if (r3 != 0)
      out.double_root = t;
    else
      out.triple_root = t;
  }
  return out;
}

// any root in F_p of a*Y^2 + b*Y + c (a unit); nullopt if none
std::optional<long> quad_root(long a, long b, long c, long p) {
  for (long y = 0; y < p; ++y)
    if (mod_p((a * y % p + b) % p * y % p + c, p) == 0) return y;
  return std::nullopt;
}

LocalData run_tate(LocalModel m) {
  const LocalField& F = *m.F;
  long p = F.p();
  LocalData out;
  out.p = p;
  long extra_u_val = 0;  // pi-scalings applied (step 11)

  for (int guard = 0; guard < 64; ++guard) {
    long vd = m.disc().val_exact();
    out.vdisc = vd;
    if (vd == 0) {
      out.kodaira = "I0";
      out.cls = Reduction::Good;
      out.conductor_exponent = 0;
      out.n = 0;
      out.model_residues = {m.a1.residue(), m.a2.residue(), m.a3.residue(),
                            m.a4.residue(), m.a6.residue()};
      return out;
    }

    // move the singular point of the reduction to (0,0)
    {
      long A1 = m.a1.residue(), A2 = m.a2.residue(), A3 = m.a3.residue(),
           A4 = m.a4.residue(), A6 = m.a6.residue();
      bool found = false;
      long x0 = 0, y0 = 0;
      for (long x = 0; x < p && !found; ++x)
        for (long y = 0; y < p && !found; ++y) {
          long f = mod_p(y * y + A1 * x * y + A3 * y - x * x * x - A2 * x * x -
                             A4 * x - A6,
                         p);
          long fx = mod_p(A1 * y - 3 * x * x - 2 * A2 * x - A4, p);
          long fy = mod_p(2 * y + A1 * x + A3, p);
          if (f == 0 && fx == 0 && fy == 0) {
            found = true;
            x0 = x;
            y0 = y;
          }
        }
      if (!found) throw std::logic_error("tate: singular point not found");
      if (x0 != 0 || y0 != 0)
        m.translate(LocalElt(&F, Int(x0)), LocalElt::zero(&F),
                    LocalElt(&F, Int(y0)));
    }

    if (!m.b2().val_at_least(1)) {
      out.kodaira = "I" + std::to_string(vd);
      out.n = vd;
      long A1 = m.a1.residue(), A2 = m.a2.residue();
      bool split = quad_root(1, A1, mod_p(-A2, p), p).has_value();
      out.cls = split ? Reduction::SplitMult : Reduction::NonsplitMult;
      out.conductor_exponent = 1;
      out.model_residues = {m.a1.residue(), m.a2.residue(), m.a3.residue(),
                            m.a4.residue(), m.a6.residue()};
      return out;
    }

    out.cls = Reduction::Additive;

    if (!m.a6.val_at_least(2)) {
      out.kodaira = "II";
      out.conductor_exponent = vd;
      return out;
    }
    if (!m.b8().val_at_least(3)) {
      out.kodaira = "III";
      out.conductor_exponent = vd - 1;
      return out;
    }
    if (!m.b6().val_at_least(3)) {
      out.kodaira = "IV";
      out.conductor_exponent = vd - 2;
      return out;
    }

    // normalize: v(a1),v(a2) >= 1, v(a3) >= 2, v(a4) >= 2, v(a6) >= 3
    {
      long A1 = m.a1.residue(), A2 = m.a2.residue();
      auto s0 = quad_root(1, A1, mod_p(-A2, p), p);
      if (!s0) throw std::logic_error("tate: step-6 double root missing");
      m.translate(LocalElt::zero(&F), LocalElt(&F, Int(*s0)),
                  LocalElt::zero(&F));
      if (p != 2) {
        long a31 = m.a3.div_pi(1).residue();
        long tau = mod_p(-a31 * mod_inverse(2, p), p);
        m.translate(LocalElt::zero(&F), LocalElt::zero(&F),
                    LocalElt::pi(&F).times_long(tau));
      } else {
        long w = m.a6.div_pi(2).residue();  // char 2: sqrt(w) = w
        m.translate(LocalElt::zero(&F), LocalElt::zero(&F),
                    LocalElt::pi(&F).times_long(w));
      }
      if (!(m.a1.val_at_least(1) && m.a2.val_at_least(1) &&
            m.a3.val_at_least(2) && m.a4.val_at_least(2) &&
            m.a6.val_at_least(3)))
        throw std::logic_error("tate: step-6 normalization failed");
    }

    long c2 = m.a2.div_pi(1).residue();
    long c1 = m.a4.div_pi(2).residue();
    long c0 = m.a6.div_pi(3).residue();
    CubicRoots cr = cubic_structure(c2, c1, c0, p);

    if (!cr.has_multiple()) {
      out.kodaira = "I0*";
      out.n = 0;
      out.conductor_exponent = vd - 4;
      return out;
    }

    if (cr.double_root) {
      if (*cr.double_root != 0)
        m.translate(LocalElt::pi(&F).times_long(*cr.double_root),
                    LocalElt::zero(&F), LocalElt::zero(&F));
      auto pi_pow = [&F](long k) {
        LocalElt x(&F, Int(1));
        for (long i = 0; i < k; ++i) x = x * LocalElt::pi(&F);
        return x;
      };
      // I_n* subprocedure
      for (long k = 1; k <= vd + 2; ++k) {
        // Y^2 + a_{3,k+1} Y - a_{6,2k+2}
        long g1 = m.a3.div_pi(k + 1).residue();
        long g0 = mod_p(-m.a6.div_pi(2 * k + 2).residue(), p);
        long disc_y = mod_p(g1 * g1 - 4 * g0, p);
        if (disc_y != 0) {
          out.n = 2 * k - 1;
          out.kodaira = "I" + std::to_string(out.n) + "*";
          out.conductor_exponent = vd - 4 - out.n;
          return out;
        }
        auto y0 = quad_root(1, g1, g0, p);
        if (!y0) throw std::logic_error("tate: I_n* Y-double root missing");
        if (*y0 != 0)
          m.translate(LocalElt::zero(&F), LocalElt::zero(&F),
                      pi_pow(k + 1).times_long(*y0));
        // a2 X^2 + a_{4,k+2} X + a_{6,2k+3}
        long h2 = m.a2.div_pi(1).residue();
        long h1 = m.a4.div_pi(k + 2).residue();
        long h0 = m.a6.div_pi(2 * k + 3).residue();
        long disc_x = mod_p(h1 * h1 - 4 * h2 * h0, p);
        if (disc_x != 0) {
          out.n = 2 * k;
          out.kodaira = "I" + std::to_string(out.n) + "*";
          out.conductor_exponent = vd - 4 - out.n;
          return out;
        }
        auto x0 = quad_root(h2, h1, h0, p);
        if (!x0) throw std::logic_error("tate: I_n* X-double root missing");
        if (*x0 != 0)
          m.translate(pi_pow(k + 1).times_long(*x0), LocalElt::zero(&F),
                      LocalElt::zero(&F));
      }
      throw std::logic_error("tate: I_n* loop did not terminate");
    }

    // triple root
    if (*cr.triple_root != 0)
      m.translate(LocalElt::pi(&F).times_long(*cr.triple_root),
                  LocalElt::zero(&F), LocalElt::zero(&F));

    // Y^2 + a_{3,2} Y - a_{6,4}
    long g1 = m.a3.div_pi(2).residue();
    long g0 = mod_p(-m.a6.div_pi(4).residue(), p);
    long disc_y = mod_p(g1 * g1 - 4 * g0, p);
    if (disc_y != 0) {
      out.kodaira = "IV*";
      out.conductor_exponent = vd - 6;
      return out;
    }
    {
      auto y0 = quad_root(1, g1, g0, p);
      if (!y0) throw std::logic_error("tate: IV* double root missing");
      if (*y0 != 0)
        m.translate(LocalElt::zero(&F), LocalElt::zero(&F),
                    (LocalElt::pi(&F) * LocalElt::pi(&F)).times_long(*y0));
    }

    if (!m.a4.val_at_least(4)) {
      out.kodaira = "III*";
      out.conductor_exponent = vd - 7;
      return out;
    }
    if (!m.a6.val_at_least(6)) {
      out.kodaira = "II*";
      out.conductor_exponent = vd - 8;
      return out;
    }

    // non-minimal: scale by u = pi and start over
    m.scale_down_by_pi();
    ++extra_u_val;
  }
  throw std::logic_error("tate: restart loop did not terminate");
}

LocalData run_with_escalation(const std::array<Int, 5>& a, long p,
                              const std::vector<Int>& eis) {
  for (long prec : {64L, 128L, 256L, 512L}) {
    try {
      LocalField F(p, eis, prec);
      LocalModel m{&F, LocalElt(&F, a[0]), LocalElt(&F, a[1]),
                   LocalElt(&F, a[2]), LocalElt(&F, a[3]), LocalElt(&F, a[4])};
      return run_tate(std::move(m));
    } catch (const PrecisionExhausted&) {
      continue;
    }
  }
  throw std::logic_error("tate: precision escalation exhausted");
}

}  // namespace

LocalData tate_local_int(const std::array<Int, 5>& a, long p) {
  return run_with_escalation(a, p, {Int(-p), Int(1)});
}

LocalData tate_over_field(const std::array<Int, 5>& a, long p,
                          const std::vector<Int>& eisenstein) {
  return run_with_escalation(a, p, eisenstein);
}

LocalData tate_over_cyclotomic_subfield(const CurveData& curve, long p, int k,
                                        const std::vector<long>& H) {
  auto eis = eisenstein_from_gaussian_periods(p, k, H);
  return tate_over_field(curve.coeffs(), p, eis);
}

LocalData tate_over_tame_extension(const CurveData& curve, long p, long e) {
  if (e % p == 0) throw WildCase("tate_over_tame_extension: p divides e");
  if (e == 1) return curve.local_data(p);

  LocalData via_field;
  if ((p - 1) % e == 0) {
    // index-e subgroup of (Z/p)^x, Gaussian-period realization
    long g = primitive_root_odd_prime_power(p, 1);
    std::vector<long> H;
    long ge = mod_pow(g, e, p);
    long h = 1;
    for (long i = 0; i < (p - 1) / e; ++i) {
      H.push_back(h);
      h = h * ge % p;
    }
    via_field = tate_over_cyclotomic_subfield(curve, p, 1, H);
  } else {
    std::vector<Int> eis(e + 1, Int(0));
    eis[0] = p;
    eis[e] = 1;  // x^e + p, i.e. pi = (-p)^(1/e)
    via_field = tate_over_field(curve.coeffs(), p, eis);
  }

  if (e == 2) {
    // cross-check against the quadratic-twist criterion
    Int d = (p % 4 == 1) ? Int(p) : Int(-p);
    CurveData tw = quadratic_twist(curve, d);
    const LocalData& tld = tw.local_data(p);
    bool twist_semistable = tld.cls != Reduction::Additive;
    bool field_semistable = via_field.cls != Reduction::Additive;
    if (twist_semistable != field_semistable)
      throw std::logic_error(
          "tate_over_tame_extension: quadratic twist cross-check failed");
    if (tld.cls == Reduction::Good && via_field.cls != Reduction::Good)
      throw std::logic_error(
          "tate_over_tame_extension: twist good vs field non-good");
  }
  return via_field;
}

}  // namespace ellchi
