#include "ellchi/reconstruct.hpp"

#include <vector>

namespace ellchi {

namespace {

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Best rational approximation to x with denominator <= cap.
Rat best_approximation(const Rat& x, const Int& cap) {
  Int h0(1), k0(0);  // h_{-1}/k_{-1}
  Int h1, k1(1);     // h_0/k_0 after first step
  Rat rem = x;
  Int a;
  mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
  h1 = a;
  Rat frac = rem - Rat(a);
  while (true) {
    if (frac == 0) return Rat(h1) / Rat(k1);
    rem = 1 / frac;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
    frac = rem - Rat(a);
    Int h2 = a * h1 + h0;
    Int k2 = a * k1 + k0;
    if (k2 > cap) {
      // Semiconvergent with largest allowed denominator.
      Int t = (cap - k0) / k1;
      Int hs = t * h1 + h0;
      Int ks = t * k1 + k0;
      Rat conv = Rat(h1) / Rat(k1);
      if (ks <= 0) return conv;
      Rat semi = Rat(hs) / Rat(ks);
      return rat_abs(x - semi) < rat_abs(x - conv) ? semi : conv;
    }
    h0 = h1;
    k0 = k1;
    h1 = h2;
    k1 = k2;
  }
}

// Farey neighbours of p/q (lowest terms) with denominator <= cap.
std::vector<Rat> farey_neighbours(const Rat& r, const Int& cap) {
  Int p = r.get_num(), q = r.get_den();
  std::vector<Rat> out;
  if (q > cap) return out;
  // Solve q*u - p*v = +-1.
  Int u, v, g;
  mpz_gcdext(g.get_mpz_t(), v.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t(),
             p.get_mpz_t());
  // g = q*v + p*u = 1, so q*(-u) - p*v' form; rearrange both signs directly:
  for (int sgn : {+1, -1}) {
    // want p*b - q*a = sgn with 0 < b <= cap maximal
    // base solution: p*(sgn*v') ... derive from gcdext: q*v + p*u = 1
    Int a0 = -sgn * v, b0 = sgn * u;  // p*b0 - q*a0 = sgn
    // shift b0 by multiples of q into (cap-q, cap]
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), Int(cap - b0).get_mpz_t(), q.get_mpz_t());
    Int b = b0 + k * q;
    Int a = a0 + k * p;
    if (b >= 1) out.emplace_back(Rat(a) / Rat(b));
  }
  return out;
}

}  // namespace

Rat rational_reconstruct_exact(const Rat& x, const Int& cap, const Rat& tol) {
  if (tol <= 0) throw std::domain_error("rational_reconstruct: tolerance <= 0");
  if (cap < 1) throw std::domain_error("rational_reconstruct: cap < 1");
  Rat best = best_approximation(x, cap);
  if (rat_abs(x - best) > tol) throw NoCandidate("no rational within tolerance");
  Rat margin = Rat(1000000) * tol;
  for (const Rat& nb : farey_neighbours(best, cap)) {
    if (nb == best) continue;
    if (rat_abs(x - nb) < margin)
      throw AmbiguousReconstruction("second candidate " + format_rational(nb) +
                                    " within separation margin of " +
                                    format_rational(best));
  }
  return best;
}

Rat rational_reconstruct(const BigFloat& x, const Int& cap, const BigFloat& tol) {
  if (!x.is_finite()) throw NoCandidate("non-finite input");
  return rational_reconstruct_exact(x.to_exact_rat(), cap, tol.to_exact_rat());
}

}  // namespace ellchi
