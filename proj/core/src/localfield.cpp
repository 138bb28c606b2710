#include "ellchi/localfield.hpp"

#include <algorithm>

#include "ellchi/cyclo.hpp"

namespace ellchi {

LocalField::LocalField(long p, std::vector<Int> eisenstein, long prec)
    : p_(p), e_(static_cast<long>(eisenstein.size()) - 1), prec_(prec),
      eis_(std::move(eisenstein)) {
  if (e_ < 1 || eis_.back() != 1)
    throw std::domain_error("LocalField: polynomial must be monic");
  if (eis_[0] % p_ != 0 || eis_[0] % (Int(p_) * p_) == 0)
    throw std::domain_error("LocalField: polynomial must be Eisenstein");
  for (long i = 1; i < e_; ++i)
    if (eis_[i] % p_ != 0)
      throw std::domain_error("LocalField: polynomial must be Eisenstein");
  p_prec_ = pow_int(Int(p_), prec_);
  // p/pi = -(x^{e-1} + a_{e-1} x^{e-2} + ... + a_1) * (a_0/p)^{-1} in O.
  Int u0 = eis_[0] / p_;  // a p-adic unit (integer coprime to p)
  Int u0_inv;
  if (mpz_invert(u0_inv.get_mpz_t(), u0.get_mpz_t(), p_prec_.get_mpz_t()) == 0)
    throw std::domain_error("LocalField: constant term unit inversion failed");
  p_over_pi_.assign(e_, Int(0));
  for (long i = 1; i <= e_; ++i) {
    Int coeff = -((i == e_ ? Int(1) : eis_[i]) * u0_inv);
    mpz_mod(coeff.get_mpz_t(), coeff.get_mpz_t(), p_prec_.get_mpz_t());
    p_over_pi_[i - 1] = coeff;
  }
}

LocalElt::LocalElt(const LocalField* f, const Int& constant) : f_(f) {
  c_.assign(f->e(), Int(0));
  Int v = constant;
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), f->p_pow_prec().get_mpz_t());
  c_[0] = v;
}

LocalElt LocalElt::pi(const LocalField* f) {
  std::vector<Int> c(f->e(), Int(0));
  if (f->e() == 1) {
    Int v = -f->eisenstein()[0];  // x = -a0 = u*p
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), f->p_pow_prec().get_mpz_t());
    c[0] = v;
  } else {
    c[1] = 1;
  }
  return LocalElt(f, std::move(c));
}

std::optional<long> LocalElt::val() const {
  long best = -1;
  for (long i = 0; i < f_->e(); ++i) {
    if (c_[i] == 0) continue;
    long vp = valuation(c_[i], Int(f_->p()));
    long v = f_->e() * vp + i;
    if (best < 0 || v < best) best = v;
  }
  if (best < 0) return std::nullopt;
  return best;
}

bool LocalElt::val_at_least(long k) const {
  auto v = val();
  if (!v) {
    // all coefficients vanish mod p^prec: true value has val >= e*prec
    if (k <= f_->prec_pi() - 4 * f_->e()) return true;
    throw PrecisionExhausted("val_at_least beyond working precision");
  }
  if (*v >= f_->prec_pi() - 4 * f_->e())
    throw PrecisionExhausted("valuation too close to working precision");
  return *v >= k;
}

long LocalElt::val_exact() const {
  auto v = val();
  if (!v || *v >= f_->prec_pi() - 4 * f_->e())
    throw PrecisionExhausted("val_exact: element indistinguishable from zero");
  return *v;
}

long LocalElt::residue() const {
  Int r = c_[0] % f_->p();
  return r.get_si();
}

LocalElt LocalElt::div_pi(long k) const {
  LocalElt x = *this;
  for (long step = 0; step < k; ++step) {
    if (!x.val_at_least(1))
      throw std::domain_error("div_pi: valuation < 1");
    std::vector<Int> out(f_->e(), Int(0));
    // x = c0 + c1 pi + ... : x/pi = c1 + c2 pi + ... + (c0/p)*(p/pi)
    for (long i = 1; i < f_->e(); ++i) out[i - 1] = x.c_[i];
    Int c0 = x.c_[0];
    if (c0 % f_->p() != 0) throw std::domain_error("div_pi: c0 not divisible");
    Int q = c0 / f_->p();
    const auto& ppi = f_->p_over_pi();
    for (long i = 0; i < f_->e(); ++i) {
      out[i] += q * ppi[i];
      mpz_mod(out[i].get_mpz_t(), out[i].get_mpz_t(),
              f_->p_pow_prec().get_mpz_t());
    }
    x = LocalElt(f_, std::move(out));
  }
  return x;
}

LocalElt operator+(const LocalElt& a, const LocalElt& b) {
  std::vector<Int> c(a.f_->e());
  for (long i = 0; i < a.f_->e(); ++i) {
    c[i] = a.c_[i] + b.c_[i];
    mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(),
            a.f_->p_pow_prec().get_mpz_t());
  }
  return LocalElt(a.f_, std::move(c));
}

LocalElt operator-(const LocalElt& a, const LocalElt& b) {
  std::vector<Int> c(a.f_->e());
  for (long i = 0; i < a.f_->e(); ++i) {
    c[i] = a.c_[i] - b.c_[i];
    mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(),
            a.f_->p_pow_prec().get_mpz_t());
  }
  return LocalElt(a.f_, std::move(c));
}

LocalElt operator-(const LocalElt& a) {
  std::vector<Int> c(a.f_->e());
  for (long i = 0; i < a.f_->e(); ++i) {
    c[i] = -a.c_[i];
    mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(),
            a.f_->p_pow_prec().get_mpz_t());
  }
  return LocalElt(a.f_, std::move(c));
}

LocalElt operator*(const LocalElt& a, const LocalElt& b) {
  long e = a.f_->e();
  std::vector<Int> prod(2 * e - 1, Int(0));
  for (long i = 0; i < e; ++i) {
    if (a.c_[i] == 0) continue;
    for (long j = 0; j < e; ++j) {
      if (b.c_[j] == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  // reduce modulo the monic Eisenstein polynomial
  const auto& g = a.f_->eisenstein();
  for (long k = 2 * e - 2; k >= e; --k) {
    Int top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (long i = 0; i < e; ++i) prod[k - e + i] -= top * g[i];
  }
  std::vector<Int> c(e);
  for (long i = 0; i < e; ++i) {
    c[i] = prod[i];
    mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(),
            a.f_->p_pow_prec().get_mpz_t());
  }
  return LocalElt(a.f_, std::move(c));
}

LocalElt LocalElt::times_long(long s) const {
  std::vector<Int> c(f_->e());
  for (long i = 0; i < f_->e(); ++i) {
    c[i] = c_[i] * s;
    mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(),
            f_->p_pow_prec().get_mpz_t());
  }
  return LocalElt(f_, std::move(c));
}

std::vector<Int> eisenstein_from_gaussian_periods(long p, int k,
                                                  const std::vector<long>& H) {
  long q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  long phi_q = euler_phi_l(q);
  long e = phi_q / static_cast<long>(H.size());

  // coset representatives of H in (Z/q)^x
  std::vector<long> reps;
  std::vector<bool> seen(q, false);
  for (long a = 1; a < q; ++a) {
    if (a % p == 0 || seen[a]) continue;
    reps.push_back(a);
    for (long h : H) seen[(a * h) % q] = true;
  }
  if (static_cast<long>(reps.size()) != e)
    throw std::domain_error("eisenstein_from_gaussian_periods: bad subgroup");

  auto period_minpoly = [&](int variant) -> std::vector<Int> {
    // eta_c = sum_{h in H} zeta^{c h}, perturbed for variant > 0 to
    // eta_c + p * eta_c^{variant+1}; min poly = prod_c (x - eta_c).
    std::vector<CycloNumber> etas;
    for (long c : reps) {
      std::vector<Rat> raw(q, Rat(0));
      for (long h : H) raw[(c * h) % q] += 1;
      CycloNumber eta = CycloNumber::reduce(q, raw);
      if (variant > 0) {
        CycloNumber pow = eta;
        for (int t = 0; t < variant; ++t) pow = pow * eta;
        eta = eta + Rat(p) * pow;
      }
      etas.push_back(eta);
    }
    // multiply out prod (x - eta_c) with CycloNumber coefficients
    std::vector<CycloNumber> poly{CycloNumber(1)};
    for (const auto& eta : etas) {
      std::vector<CycloNumber> nxt(poly.size() + 1, CycloNumber(0));
      for (size_t i = 0; i < poly.size(); ++i) {
        nxt[i + 1] = nxt[i + 1] + poly[i];
        nxt[i] = nxt[i] - eta * poly[i];
      }
      poly = std::move(nxt);
    }
    std::vector<Int> out(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
      CycloNumber c = poly[i];
      if (!c.is_rational())
        throw std::logic_error("gaussian period minpoly: non-rational coeff");
      Rat r = c.as_rational();
      if (r.get_den() != 1)
        throw std::logic_error("gaussian period minpoly: non-integral coeff");
      out[i] = r.get_num();
    }
    return out;
  };

  auto eval_at = [](const std::vector<Int>& poly, const Int& x) {
    Int acc(0);
    for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
  };

  for (int variant = 0; variant < 4; ++variant) {
    std::vector<Int> m = period_minpoly(variant);
    // shift x -> x - j so that the generator + j is a uniformizer:
    // v_p(m(-j)) must equal 1.
    for (long j = 0; j <= p * p; ++j) {
      Int val_at = eval_at(m, Int(-j));
      if (val_at == 0) continue;
      if (valuation(val_at, Int(p)) != 1) continue;
      // min poly of eta + j is m(x - j); binomial expansion
      std::vector<Int> shifted(m.size(), Int(0));
      std::vector<std::vector<Int>> binom(m.size(),
                                          std::vector<Int>(m.size(), Int(0)));
      for (size_t n = 0; n < m.size(); ++n) {
        binom[n][0] = 1;
        for (size_t r = 1; r <= n; ++r)
          binom[n][r] =
              binom[n - 1][r - 1] + (r <= n - 1 ? binom[n - 1][r] : Int(0));
      }
      for (size_t n = 0; n < m.size(); ++n) {
        if (m[n] == 0) continue;
        Int pw(1);  // (-j)^(n-t), coefficient of x^t picks m_n*C(n,t)*pw
        for (long t = static_cast<long>(n); t >= 0; --t) {
          shifted[t] += m[n] * binom[n][t] * pw;
          pw *= Int(-j);
        }
      }
      // Eisenstein check
      bool ok = shifted.back() == 1;
      for (size_t i = 0; ok && i + 1 < shifted.size(); ++i)
        if (shifted[i] % p != 0) ok = false;
      if (ok && shifted[0] % (Int(p) * p) == 0) ok = false;
      if (ok) return shifted;
    }
  }
  throw std::logic_error("eisenstein_from_gaussian_periods: no uniformizer found");
}

}  // namespace ellchi
