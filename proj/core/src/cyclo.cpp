#include "ellchi/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ellchi {

namespace {

std::map<long, std::vector<Int>> g_phi_cache;
// x^k mod Phi_d for k = phi(d) .. d-1, per order d.
std::map<long, std::vector<std::vector<Int>>> g_red_cache;
std::mutex g_cyclo_mutex;

// Divide polynomial a by monic b exactly, integer coefficients.
std::vector<Int> exact_poly_div(std::vector<Int> a, const std::vector<Int>& b) {
  long db = static_cast<long>(b.size()) - 1;
  long da = static_cast<long>(a.size()) - 1;
  std::vector<Int> q(da - db + 1, Int(0));
  for (long k = da - db; k >= 0; --k) {
    Int c = a[k + db];
    q[k] = c;
    if (c != 0)
      for (long i = 0; i <= db; ++i) a[k + i] -= c * b[i];
  }
  return q;
}

const std::vector<Int>& cyclotomic_polynomial_locked(long d) {
  auto it = g_phi_cache.find(d);
  if (it != g_phi_cache.end()) return it->second;
  std::vector<Int> poly;
  if (d == 1) {
    poly = {Int(-1), Int(1)};
  } else {
    // (x^d - 1) / prod_{e|d, e<d} Phi_e
    std::vector<Int> num(d + 1, Int(0));
    num[0] = -1;
    num[d] = 1;
    for (long e = 1; e < d; ++e)
      if (d % e == 0) num = exact_poly_div(std::move(num), cyclotomic_polynomial_locked(e));
    poly = std::move(num);
  }
  return g_phi_cache.emplace(d, std::move(poly)).first->second;
}

const std::vector<std::vector<Int>>& reduction_rows_locked(long d) {
  auto it = g_red_cache.find(d);
  if (it != g_red_cache.end()) return it->second;
  const auto& phi = cyclotomic_polynomial_locked(d);
  long deg = static_cast<long>(phi.size()) - 1;
  std::vector<std::vector<Int>> rows;
  // row for x^deg: -(phi minus leading term)
  std::vector<Int> cur(deg, Int(0));
  for (long i = 0; i < deg; ++i) cur[i] = -phi[i];
  rows.push_back(cur);
  for (long k = deg + 1; k < d; ++k) {
    std::vector<Int> nxt(deg, Int(0));
    // multiply cur by x, reduce the overflow term via rows[0]
    Int top = cur[deg - 1];
    for (long i = deg - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (top != 0)
      for (long i = 0; i < deg; ++i) nxt[i] += top * rows[0][i];
    rows.push_back(nxt);
    cur = rows.back();
  }
  return g_red_cache.emplace(d, std::move(rows)).first->second;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long d) {
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  return cyclotomic_polynomial_locked(d);
}

CycloNumber CycloNumber::reduce(long d, const std::vector<Rat>& raw) {
  if (d < 1) throw std::domain_error("CycloNumber: order must be >= 1");
  long deg = euler_phi_l(d);
  std::vector<Rat> folded(d, Rat(0));
  for (size_t k = 0; k < raw.size(); ++k) folded[k % d] += raw[k];
  std::vector<Rat> out(deg, Rat(0));
  if (d == 1) {
    out[0] = folded[0];
    return CycloNumber(1, std::move(out));
  }
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  const auto& rows = reduction_rows_locked(d);
  for (long k = 0; k < std::min<long>(deg, d); ++k) out[k] = folded[k];
  for (long k = deg; k < d; ++k) {
    if (folded[k] == 0) continue;
    const auto& row = rows[k - deg];
    for (long i = 0; i < deg; ++i)
      if (row[i] != 0) out[i] += folded[k] * Rat(row[i]);
  }
  for (auto& c : out) c.canonicalize();
  return CycloNumber(d, std::move(out));
}

CycloNumber CycloNumber::zeta_power(long d, long k) {
  std::vector<Rat> raw(mod_l(k, d) + 1, Rat(0));
  raw[mod_l(k, d)] = 1;
  return reduce(d, raw);
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat CycloNumber::rational_part() const { return coeffs_[0]; }

Rat CycloNumber::as_rational() const {
  if (!is_rational()) throw std::domain_error("CycloNumber::as_rational: not rational");
  return coeffs_[0];
}

bool CycloNumber::is_integral() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

CycloNumber CycloNumber::lifted_to(long new_order) const {
  if (new_order % order_ != 0)
    throw std::domain_error("CycloNumber::lifted_to: old order must divide new");
  if (new_order == order_) return *this;
  long step = new_order / order_;
  std::vector<Rat> raw(new_order, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    raw[(k * step) % new_order] += coeffs_[k];
  return reduce(new_order, raw);
}

CycloNumber CycloNumber::descended_to(long new_order) const {
  if (order_ % new_order != 0)
    throw std::domain_error("CycloNumber::descended_to: new order must divide old");
  if (new_order == order_) return *this;
  // Basis of Q(zeta_new) inside Q(zeta_old): images of zeta_new^j.
  long step = order_ / new_order;
  long dim_old = euler_phi_l(order_);
  long dim_new = euler_phi_l(new_order);
  // Solve sum_j x_j * B_j = this by Gaussian elimination over Q.
  std::vector<std::vector<Rat>> cols;
  for (long j = 0; j < dim_new; ++j)
    cols.push_back(zeta_power(order_, j * step).coeffs_);
  std::vector<Rat> rhs = coeffs_;
  // dim_old x (dim_new+1) augmented system
  std::vector<std::vector<Rat>> m(dim_old, std::vector<Rat>(dim_new + 1, Rat(0)));
  for (long i = 0; i < dim_old; ++i) {
    for (long j = 0; j < dim_new; ++j) m[i][j] = cols[j][i];
    m[i][dim_new] = rhs[i];
  }
  long row = 0;
  std::vector<long> pivot_of_col(dim_new, -1);
  for (long col = 0; col < dim_new && row < dim_old; ++col) {
    long pr = -1;
    for (long i = row; i < dim_old; ++i)
      if (m[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    Rat inv = 1 / m[row][col];
    for (long j = col; j <= dim_new; ++j) m[row][j] *= inv;
    for (long i = 0; i < dim_old; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (long j = col; j <= dim_new; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (long i = row; i < dim_old; ++i)
    if (m[i][dim_new] != 0)
      throw std::domain_error("CycloNumber::descended_to: value not in subfield");
  std::vector<Rat> sol(dim_new, Rat(0));
  for (long col = 0; col < dim_new; ++col)
    if (pivot_of_col[col] >= 0) sol[col] = m[pivot_of_col[col]][dim_new];
  // Verify (cheap, exact).
  CycloNumber cand(new_order, sol);
  if (cand.lifted_to(order_) != *this)
    throw std::domain_error("CycloNumber::descended_to: residual after descent");
  return cand;
}

CycloNumber CycloNumber::minimized() const {
  CycloNumber cur = *this;
  bool changed = true;
  while (changed) {
    changed = false;
    auto f = factor_l(cur.order_);
    for (auto& [p, e] : f) {
      (void)e;
      long sub = cur.order_ / p;
      if (sub < 1) continue;
      try {
        cur = cur.descended_to(sub);
        changed = true;
        break;
      } catch (const std::domain_error&) {
      }
    }
  }
  return cur;
}

CycloNumber CycloNumber::galois(long sigma) const {
  sigma = mod_l(sigma, order_);
  if (order_ > 1 && gcd_l(sigma, order_) != 1)
    throw std::domain_error("CycloNumber::galois: sigma not coprime to order");
  std::vector<Rat> raw(order_, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    raw[(k * sigma) % order_] += coeffs_[k];
  return reduce(order_, raw);
}

Rat CycloNumber::norm() const {
  CycloNumber prod(Rat(1));
  prod = prod.lifted_to(order_);
  for (long s = 1; s <= order_; ++s) {
    if (gcd_l(s, order_) != 1) continue;
    prod = prod * galois(s);
  }
  return prod.as_rational();
}

namespace {

// Polynomial arithmetic over Q for the extended Euclid inverse.
using QPoly = std::vector<Rat>;

void qp_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  qp_trim(c);
  return c;
}

QPoly qp_sub(QPoly a, const QPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qp_trim(a);
  return a;
}

// a = q*b + r
std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
  QPoly q;
  qp_trim(a);
  if (b.empty()) throw std::domain_error("poly division by zero");
  long db = static_cast<long>(b.size()) - 1;
  Rat lead = b.back();
  while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
    long shift = static_cast<long>(a.size()) - 1 - db;
    Rat c = a.back() / lead;
    if (static_cast<long>(q.size()) < shift + 1) q.resize(shift + 1, Rat(0));
    q[shift] += c;
    for (long i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    qp_trim(a);
  }
  return {q, a};
}

}  // namespace

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("CycloNumber::inverse: zero");
  if (is_rational()) {
    CycloNumber r(1 / coeffs_[0]);
    return r.lifted_to(order_);
  }
  // Extended Euclid: u*this + v*Phi_d = gcd (a nonzero rational).
  QPoly a(coeffs_.begin(), coeffs_.end());
  qp_trim(a);
  const auto& phi_int = cyclotomic_polynomial(order_);
  QPoly b(phi_int.size());
  for (size_t i = 0; i < phi_int.size(); ++i) b[i] = Rat(phi_int[i]);
  QPoly r0 = b, r1 = a;
  QPoly s0 = {}, s1 = {Rat(1)};
  while (true) {
    qp_trim(r1);
    if (r1.empty()) throw std::domain_error("CycloNumber::inverse: not invertible");
    if (r1.size() == 1) break;
    auto [q, r2] = qp_divmod(r0, r1);
    QPoly s2 = qp_sub(s0, qp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Rat g = r1[0];
  std::vector<Rat> inv_coeffs(s1.size());
  for (size_t i = 0; i < s1.size(); ++i) inv_coeffs[i] = s1[i] / g;
  CycloNumber inv = reduce(order_, inv_coeffs);
  return inv;
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  long L = lcm_l(a.order_, b.order_);
  CycloNumber x = a.lifted_to(L), y = b.lifted_to(L);
  std::vector<Rat> c(x.coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = x.coeffs_[i] + y.coeffs_[i];
    c[i].canonicalize();
  }
  return CycloNumber(L, std::move(c));
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
  return a + (-b);
}

CycloNumber operator-(const CycloNumber& a) {
  std::vector<Rat> c(a.coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -a.coeffs_[i];
  return CycloNumber(a.order_, std::move(c));
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  long L = lcm_l(a.order_, b.order_);
  CycloNumber x = a.lifted_to(L), y = b.lifted_to(L);
  // Cyclic convolution of exponent vectors, then reduce.
  std::vector<Rat> c(L, Rat(0));
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < y.coeffs_.size(); ++j) {
      if (y.coeffs_[j] == 0) continue;
      c[(i + j) % L] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  return CycloNumber::reduce(L, c);
}

CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
  long L = lcm_l(a.order(), b.order());
  return a.lifted_to(L) * b.lifted_to(L).inverse();
}

CycloNumber operator*(const Rat& s, const CycloNumber& a) {
  std::vector<Rat> c(a.coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = s * a.coeffs_[i];
    c[i].canonicalize();
  }
  return CycloNumber(a.order_, std::move(c));
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  long L = lcm_l(a.order_, b.order_);
  return a.lifted_to(L).coeffs_ == b.lifted_to(L).coeffs_;
}

BigComplex CycloNumber::embed(long prec_bits) const {
  BigComplex acc(prec_bits);
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    BigComplex z = root_of_unity(static_cast<long>(k), order_, prec_bits);
    acc = acc + BigFloat::from_rat(coeffs_[k], prec_bits) * z;
  }
  return acc;
}

std::string CycloNumber::str() const {
  if (is_zero()) return "0";
  Int den(1);
  for (const auto& c : coeffs_) den = lcm(den, Int(c.get_den()));
  std::ostringstream body;
  bool first = true;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    Rat scaled = coeffs_[k] * Rat(den);
    scaled.canonicalize();
    if (scaled == 0) continue;
    Int num = scaled.get_num();
    if (!first && num > 0) body << "+";
    if (k == 0) {
      body << num.get_str();
    } else {
      if (num == -1)
        body << "-";
      else if (num != 1)
        body << num.get_str() << "*";
      body << "z";
      if (k > 1) body << "^" << k;
    }
    first = false;
  }
  if (den == 1) return body.str();
  std::string b = body.str();
  bool needs_parens = b.find('+') != std::string::npos ||
                      b.rfind('-') != std::string::npos && b.rfind('-') > 0;
  if (needs_parens) return "(" + b + ")/" + den.get_str();
  return b + "/" + den.get_str();
}

nlohmann::json CycloNumber::to_json() const {
  nlohmann::json j;
  j["order"] = order_;
  std::vector<std::string> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(format_rational(c));
  j["coeffs"] = cs;
  return j;
}

CycloNumber CycloNumber::from_json(const nlohmann::json& j) {
  long d = j.at("order").get<long>();
  std::vector<Rat> cs;
  for (const auto& s : j.at("coeffs")) cs.push_back(parse_rational(s.get<std::string>()));
  return reduce(d, cs);
}

CycloNumber sqrt_of_integer_cyclotomic(const Int& n) {
  if (n == 0) throw std::domain_error("sqrt_of_integer_cyclotomic: zero");
  Int m = n;
  Int square_part(1);
  bool negative = m < 0;
  if (negative) m = -m;
  std::vector<long> odd_primes;
  int two_exp = 0;
  for (auto& [p, e] : factor(m)) {
    if (e >= 2) square_part *= pow_int(p, e / 2);
    if (e % 2 == 1) {
      if (p == 2)
        two_exp = 1;
      else
        odd_primes.push_back(p.get_si());
    }
  }
  // Build sqrt of the squarefree part.
  CycloNumber acc{Rat(square_part)};
  Int realized(1);
  for (long p : odd_primes) {
    // Quadratic Gauss sum: sum_a (a|p) zeta_p^a = sqrt(p*) with
    // p* = (-1)^((p-1)/2) p.
    std::vector<Rat> raw(p, Rat(0));
    for (long a = 1; a < p; ++a) raw[a] = Rat(kronecker_l(a, p));
    acc = acc * CycloNumber::reduce(p, raw);
    realized *= (p % 4 == 1) ? Int(p) : Int(-p);
  }
  if (two_exp) {
    // zeta_8 + zeta_8^-1 = sqrt(2)
    std::vector<Rat> raw(8, Rat(0));
    raw[1] = 1;
    raw[7] = 1;
    acc = acc * CycloNumber::reduce(8, raw);
    realized *= 2;
  }
  Int squarefree(1);
  for (long p : odd_primes) squarefree *= p;
  if (two_exp) squarefree *= 2;
  if (negative) squarefree = -squarefree;
  if (squarefree != realized) {
    if (squarefree != -realized)
      throw std::logic_error("sqrt_of_integer_cyclotomic: internal mismatch");
    // need an extra factor of i
    acc = acc * CycloNumber::zeta_power(4, 1);
  }
  CycloNumber check = acc * acc;
  if (!check.is_rational() || check.as_rational() != Rat(n))
    throw std::logic_error("sqrt_of_integer_cyclotomic: verification failed");
  return acc.minimized();
}

std::pair<CycloNumber, CycloNumber> quadratic_roots_cyclotomic(const Int& t,
                                                               const Int& q) {
  Int disc = t * t - 4 * q;
  if (disc == 0) {
    CycloNumber r(Rat(t, 2));
    return {r, r};
  }
  CycloNumber s = sqrt_of_integer_cyclotomic(disc);
  CycloNumber tt{Rat(t)};
  Rat half(1, 2);
  CycloNumber r1 = half * (tt + s);
  CycloNumber r2 = half * (tt - s);
  return {r1.minimized(), r2.minimized()};
}

}  // namespace ellchi
