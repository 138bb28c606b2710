#include "ellchi/ints.hpp"

#include <algorithm>
#include <mutex>

namespace ellchi {

long mod_inverse(long a, long m) {
  long t = 0, newt = 1;
  long r = m, newr = mod_l(a, m);
  while (newr != 0) {
    long q = r / newr;
    long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inverse: arguments not coprime");
  return mod_l(t, m);
}

long mod_pow(long base, long exp, long m) {
  Int b(base), mm(m), r;
  mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp),
              mm.get_mpz_t());
  return r.get_si();
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime_l(long n) { return is_prime(Int(n)); }

namespace {
std::vector<long> g_primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
long g_sieved_to = 31;
std::mutex g_primes_mutex;
}  // namespace

const std::vector<long>& primes_up_to(long bound) {
  std::lock_guard<std::mutex> lock(g_primes_mutex);
  if (bound > g_sieved_to) {
    long hi = std::max(bound, g_sieved_to * 2);
    std::vector<bool> comp(hi + 1, false);
    g_primes.clear();
    for (long i = 2; i <= hi; ++i) {
      if (!comp[i]) {
        g_primes.push_back(i);
        for (long j = i * i; j <= hi && j > 0; j += i) comp[j] = true;
      }
    }
    g_sieved_to = hi;
  }
  return g_primes;
}

std::vector<std::pair<Int, int>> factor(Int n) {
  if (n == 0) throw std::domain_error("factor: zero");
  std::vector<std::pair<Int, int>> out;
  if (n < 0) n = -n;
  if (n == 1) return out;
  const long trial_bound = 1000000;
  for (long p : primes_up_to(trial_bound)) {
    if (Int(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(Int(p), e);
    }
  }
  if (n > 1) {
    if (!is_prime(n))
      throw std::domain_error("factor: composite cofactor beyond trial range: " +
                              n.get_str());
    out.emplace_back(n, 1);
  }
  return out;
}

std::vector<std::pair<long, int>> factor_l(long n) {
  auto f = factor(Int(n));
  std::vector<std::pair<long, int>> out;
  out.reserve(f.size());
  for (auto& [p, e] : f) out.emplace_back(p.get_si(), e);
  return out;
}

long euler_phi_l(long n) {
  long phi = 1;
  for (auto& [p, e] : factor_l(n)) {
    long pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

long multiplicative_order(long a, long m) {
  a = mod_l(a, m);
  if (gcd_l(a, m) != 1) throw std::domain_error("multiplicative_order: not a unit");
  long phi = euler_phi_l(m);
  long order = phi;
  for (auto& [p, e] : factor_l(phi)) {
    (void)e;
    while (order % p == 0 && mod_pow(a, order / p, m) == 1) order /= p;
  }
  return order;
}

long primitive_root_odd_prime_power(long p, int k) {
  // Smallest primitive root mod p; lifts to p^k unless g^(p-1) = 1 mod p^2.
  long g = 2;
  for (;; ++g) {
    if (mod_l(g, p) == 0) continue;
    if (multiplicative_order(g, p) == p - 1) break;
  }
  if (k == 1) return g;
  long p2 = p * p;
  if (mod_pow(g, p - 1, p2) == 1) g += p;
  return g;
}

long valuation_l(long n, long p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  Int m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

Int remove_factor(const Int& n, const Int& p, int& val) {
  Int m = n;
  val = 0;
  while (m != 0 && m % p == 0) {
    m /= p;
    ++val;
  }
  return m;
}

long crt_pair(long r1, long m1, long r2, long m2) {
  long inv = mod_inverse(m1 % m2, m2);
  long k = mod_l((r2 - r1) % m2 * inv % m2, m2);
  return r1 + m1 * k;
}

std::string format_rational(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rational(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

}  // namespace ellchi
