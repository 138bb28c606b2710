#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "ellchi/cyclo.hpp"
#include "ellchi/ints.hpp"
#include "ellchi/qmatrix.hpp"
#include "ellchi/reconstruct.hpp"

using namespace ellchi;

namespace {

Rat rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 12);
  Rat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

CycloNumber rnd_cyclo(long d, std::mt19937& rng) {
  std::vector<Rat> raw(d);
  for (auto& c : raw) c = rnd_rat(rng);
  return CycloNumber::reduce(d, raw);
}

// Independent norm via the resultant Res(Phi_d, f) of the coefficient
// polynomial, computed by evaluating f at complex roots... instead we use
// the subresultant-free definition: product over all primitive d-th roots,
// done with exact polynomial arithmetic in a redundant modulus.
Rat resultant_norm(const CycloNumber& x) {
  long d = x.order();
  // Res(Phi_d, f) = prod_{zeta primitive} f(zeta) = Norm(f(zeta_d)) since
  // Phi_d is monic.  Compute by exact polynomial resultant via Euclid in Q[x].
  std::vector<Rat> f(x.coeffs().begin(), x.coeffs().end());
  const auto& phi_int = cyclotomic_polynomial(d);
  std::vector<Rat> g(phi_int.size());
  for (size_t i = 0; i < phi_int.size(); ++i) g[i] = Rat(phi_int[i]);
  // resultant(g, f) with deg g = phi(d)
  auto trim = [](std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(f);
  trim(g);
  Rat res(1);
  std::vector<Rat> a = g, b = f;
  while (true) {
    trim(b);
    if (b.empty()) return Rat(0);
    if (b.size() == 1) {
      // res *= b[0]^deg(a)
      Rat lead = b[0];
      long da = static_cast<long>(a.size()) - 1;
      Rat pw(1);
      for (long i = 0; i < da; ++i) pw *= lead;
      return res * pw;
    }
    long da = static_cast<long>(a.size()) - 1;
    long db = static_cast<long>(b.size()) - 1;
    // a = q*b + r
    std::vector<Rat> r = a;
    Rat lead = b.back();
    while (static_cast<long>(r.size()) - 1 >= db) {
      long shift = static_cast<long>(r.size()) - 1 - db;
      Rat c = r.back() / lead;
      for (long i = 0; i <= db; ++i) r[shift + i] -= c * b[i];
      trim(r);
      if (r.empty()) break;
    }
    long dr = static_cast<long>(r.size()) - 1;
    // res(a,b) = (-1)^(da*db) * lead^(da - dr) * res(b, r)
    Rat lead_pow(1);
    for (long i = 0; i < da - (r.empty() ? 0 : dr); ++i) lead_pow *= lead;
    if ((da * db) % 2 == 1) res = -res;
    res *= lead_pow;
    a = b;
    b = r;
  }
}

}  // namespace

TEST_CASE("cyclotomic reduction identities") {
  // zeta_5^4 = -1 - z - z^2 - z^3
  CycloNumber z54 = CycloNumber::zeta_power(5, 4);
  CHECK(z54.coeffs() == std::vector<Rat>{Rat(-1), Rat(-1), Rat(-1), Rat(-1)});
  // zeta_4^2 = -1
  CHECK(CycloNumber::zeta_power(4, 2) == CycloNumber(Rat(-1)));
  // zeta_6^2 = zeta_6 - 1
  CycloNumber z62 = CycloNumber::zeta_power(6, 2);
  CHECK(z62.coeffs() == std::vector<Rat>{Rat(-1), Rat(1)});
}

TEST_CASE("cyclotomic integrality") {
  // (2+zeta_3)/2 not integral
  CycloNumber x = Rat(1, 2) * (CycloNumber(2) + CycloNumber::zeta_power(3, 1));
  CHECK(!x.is_integral());
  CHECK(CycloNumber(2).is_integral());
  // (2+4z+z^2+3z^3)/5 with z = zeta_5
  CycloNumber y = Rat(1, 5) * CycloNumber::reduce(5, {Rat(2), Rat(4), Rat(1), Rat(3)});
  CHECK(!y.is_integral());
  // integrality is preserved under ring operations
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    CycloNumber a = rnd_cyclo(12, rng), b = rnd_cyclo(12, rng);
    CycloNumber ai = CycloNumber::reduce(12, {Rat(1), Rat(2), Rat(-3), Rat(5)});
    CycloNumber bi = CycloNumber::reduce(12, {Rat(-2), Rat(0), Rat(7), Rat(1)});
    CHECK((ai * bi).is_integral());
    CHECK((ai + bi).is_integral());
    (void)a;
    (void)b;
  }
}

TEST_CASE("galois action and norms") {
  // rational fixed by any sigma
  CycloNumber r(Rat(7, 3));
  CHECK(r.lifted_to(5).galois(2) == r.lifted_to(5));
  // norm((2+i)/5) = 1/5
  CycloNumber i4 = CycloNumber::zeta_power(4, 1);
  CycloNumber v = Rat(1, 5) * (CycloNumber(2) + i4);
  CHECK(v.norm() == Rat(1, 5));
  // norm((3+i)/10) = 1/10
  CycloNumber w = Rat(1, 10) * (CycloNumber(3) + i4);
  CHECK(w.norm() == Rat(1, 10));
  CHECK_THROWS_AS(CycloNumber::zeta_power(6, 1).galois(2), std::domain_error);
}

TEST_CASE("cyclo arithmetic differential test vs redundant basis") {
  std::mt19937 rng(42);
  for (long d : {3L, 4L, 5L, 6L, 8L, 12L}) {
    for (int rep = 0; rep < 200; ++rep) {
      CycloNumber a = rnd_cyclo(d, rng), b = rnd_cyclo(d, rng);
      // redundant-basis product: convolution on exponents then reduce once
      std::vector<Rat> raw(2 * d, Rat(0));
      for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
          Rat ai = i < static_cast<long>(a.coeffs().size()) ? a.coeffs()[i] : Rat(0);
          Rat bj = j < static_cast<long>(b.coeffs().size()) ? b.coeffs()[j] : Rat(0);
          if (ai != 0 && bj != 0) raw[i + j] += ai * bj;
        }
      CHECK(a * b == CycloNumber::reduce(d, raw));
      CHECK(a + b == b + a);
    }
  }
}

TEST_CASE("norm agrees with resultant route") {
  std::mt19937 rng(1234);
  for (long d : {3L, 4L, 5L, 6L, 8L, 12L}) {
    for (int rep = 0; rep < 100; ++rep) {
      CycloNumber x = rnd_cyclo(d, rng);
      CHECK(x.norm() == resultant_norm(x));
    }
  }
}

TEST_CASE("inverse and division") {
  std::mt19937 rng(99);
  for (long d : {3L, 4L, 5L, 8L, 9L, 12L}) {
    for (int rep = 0; rep < 30; ++rep) {
      CycloNumber x = rnd_cyclo(d, rng);
      if (x.is_zero()) continue;
      CHECK(x * x.inverse() == CycloNumber(1).lifted_to(d));
    }
  }
}

TEST_CASE("lift and descend round-trip") {
  CycloNumber x = CycloNumber::reduce(5, {Rat(2), Rat(-1), Rat(1, 3), Rat(0)});
  CHECK(x.lifted_to(20).descended_to(5) == x);
  CHECK(x.lifted_to(20).minimized().order() == 5);
  CHECK_THROWS_AS(CycloNumber::zeta_power(20, 1).descended_to(5),
                  std::domain_error);
}

TEST_CASE("sqrt of integers in cyclotomic fields") {
  for (long n : {-1L, 2L, -2L, 3L, -3L, 5L, -7L, 12L, -11L, 45L, -20L}) {
    CycloNumber s = sqrt_of_integer_cyclotomic(Int(n));
    CHECK((s * s).as_rational() == Rat(n));
  }
  auto [r1, r2] = quadratic_roots_cyclotomic(Int(-3), Int(3));
  // roots of x^2+3x+3: -1+zeta_3 and its conjugate
  CycloNumber expect = CycloNumber::zeta_power(3, 1) - CycloNumber(1).lifted_to(3);
  CHECK((r1 == expect || r2 == expect));
  CHECK(r1 + r2 == CycloNumber(-3));
  CHECK(r1 * r2 == CycloNumber(3));
}

TEST_CASE("cyclo json round trip") {
  CycloNumber y = Rat(1, 5) * CycloNumber::reduce(5, {Rat(2), Rat(4), Rat(1), Rat(3)});
  nlohmann::json j = y.to_json();
  CHECK(j["order"] == 5);
  CHECK(j["coeffs"][0] == "2/5");
  CHECK(CycloNumber::from_json(j) == y);
}

TEST_CASE("rational kernel") {
  RationalMatrix id = RationalMatrix::identity(3);
  CHECK(rational_kernel(id).empty());

  RationalMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 1;
  auto k = rational_kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<Rat>{Rat(1), Rat(-1)});

  // kernel dimension + rank = cols, and M*v = 0 exactly
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int rep = 0; rep < 25; ++rep) {
    RationalMatrix a(5, 7);
    for (long i = 0; i < 5; ++i)
      for (long j = 0; j < 7; ++j) {
        Rat q(entry(rng), 1 + (rep % 3));
        q.canonicalize();
        a.at(i, j) = q;
      }
    auto ker = rational_kernel(a);
    CHECK(static_cast<long>(ker.size()) + rational_rank(a) == a.cols());
    for (const auto& v : ker) {
      auto mv = a.apply(v);
      for (const auto& x : mv) CHECK(x == 0);
    }
  }
}

TEST_CASE("hnf of integer row lattices") {
  std::vector<std::vector<Int>> rows = {{Int(2), Int(0)}, {Int(0), Int(2)},
                                        {Int(1), Int(1)}};
  auto h = hnf_rows(rows);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == std::vector<Int>{Int(1), Int(1)});
  CHECK(h[1] == std::vector<Int>{Int(0), Int(2)});
}

TEST_CASE("rational reconstruction") {
  long prec = 160;
  BigFloat half = BigFloat::from_rat(Rat(1, 2), prec);
  BigFloat tol = BigFloat::from_rat(Rat(Int(1), pow_int(Int(10), 20)), prec);
  CHECK(rational_reconstruct(half, Int(100), tol) == Rat(1, 2));

  BigFloat mp3 = BigFloat::from_rat(Rat(-3, 10), prec);
  CHECK(rational_reconstruct(mp3, Int(100), tol) == Rat(-3, 10));

  BigFloat odd = BigFloat::from_rat(Rat(1234567891, 10000000000L), prec);
  BigFloat tol12 = BigFloat::from_rat(Rat(Int(1), pow_int(Int(10), 12)), prec);
  CHECK_THROWS_AS(rational_reconstruct(odd, Int(10), tol12), NoCandidate);

  // ambiguity: tolerance so loose that a neighbour is within margin
  BigFloat loose = BigFloat::from_rat(Rat(1, 1000), prec);
  CHECK_THROWS_AS(rational_reconstruct(half, Int(100), loose),
                  AmbiguousReconstruction);

  // round-trip: exact rational rendered at ~30 digits comes back
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> num(-5000, 5000);
  std::uniform_int_distribution<long> den(1, 997);
  for (int rep = 0; rep < 200; ++rep) {
    Rat q(num(rng), den(rng));
    q.canonicalize();
    BigFloat x = BigFloat::from_rat(q, prec);
    BigFloat t30 = BigFloat::from_rat(Rat(Int(1), pow_int(Int(10), 25)), prec);
    CHECK(rational_reconstruct(x, Int(1000), t30) == q);
  }
}
