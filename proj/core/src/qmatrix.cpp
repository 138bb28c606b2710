#include "ellchi/qmatrix.hpp"

#include <algorithm>

namespace ellchi {

RationalMatrix RationalMatrix::identity(long n) {
  RationalMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.rows_, b.cols_);
  for (long i = 0; i < a.rows_; ++i)
    for (long k = 0; k < a.cols_; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (long j = 0; j < b.cols_; ++j) {
        const Rat& bkj = b.at(k, j);
        if (bkj != 0) c.at(i, j) += aik * bkj;
      }
    }
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.rows_, a.cols_);
  for (long i = 0; i < a.rows_; ++i)
    for (long j = 0; j < a.cols_; ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

std::vector<Rat> RationalMatrix::apply(const std::vector<Rat>& v) const {
  std::vector<Rat> out(rows_, Rat(0));
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) out[i] += at(i, j) * v[j];
  return out;
}

std::vector<Rat> RationalMatrix::apply_left(const std::vector<Rat>& v) const {
  std::vector<Rat> out(cols_, Rat(0));
  for (long i = 0; i < rows_; ++i) {
    if (v[i] == 0) continue;
    for (long j = 0; j < cols_; ++j)
      if (at(i, j) != 0) out[j] += v[i] * at(i, j);
  }
  return out;
}

namespace {

struct Echelon {
  std::vector<std::vector<Int>> a;  // integer rows after Bareiss
  std::vector<long> pivot_cols;     // per eliminated row
};

Echelon bareiss_echelon(const RationalMatrix& m) {
  long n = m.rows(), c = m.cols();
  std::vector<std::vector<Int>> a(n, std::vector<Int>(c));
  for (long i = 0; i < n; ++i) {
    Int den(1);
    for (long j = 0; j < c; ++j) den = lcm(den, Int(m.at(i, j).get_den()));
    for (long j = 0; j < c; ++j) {
      Rat scaled = m.at(i, j) * Rat(den);
      scaled.canonicalize();
      a[i][j] = scaled.get_num();
    }
  }
  Echelon e;
  Int prev(1);
  long row = 0;
  for (long col = 0; col < c && row < n; ++col) {
    long pr = -1;
    for (long i = row; i < n; ++i)
      if (a[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[row], a[pr]);
    const Int piv = a[row][col];
    for (long i = row + 1; i < n; ++i) {
      for (long j = col + 1; j < c; ++j)
        a[i][j] = (a[i][j] * piv - a[i][col] * a[row][j]) / prev;
      a[i][col] = 0;
    }
    prev = piv;
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.a = std::move(a);
  return e;
}

}  // namespace

long rational_rank(const RationalMatrix& m) {
  return static_cast<long>(bareiss_echelon(m).pivot_cols.size());
}

std::vector<std::vector<Rat>> rational_kernel(const RationalMatrix& m) {
  long c = m.cols();
  Echelon e = bareiss_echelon(m);
  long r = static_cast<long>(e.pivot_cols.size());
  std::vector<bool> is_pivot(c, false);
  for (long pc : e.pivot_cols) is_pivot[pc] = true;

  std::vector<std::vector<Rat>> basis;
  for (long fc = 0; fc < c; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> v(c, Rat(0));
    v[fc] = 1;
    // back-substitute through the echelon rows
    for (long i = r - 1; i >= 0; --i) {
      long pc = e.pivot_cols[i];
      if (pc > fc) continue;
      Rat s(0);
      for (long j = pc + 1; j < c; ++j)
        if (e.a[i][j] != 0 && v[j] != 0) s += Rat(e.a[i][j]) * v[j];
      v[pc] = -s / Rat(e.a[i][pc]);
    }
    // normalize to a primitive integer vector with positive leading entry
    Int den(1);
    for (auto& x : v) den = lcm(den, Int(x.get_den()));
    Int g(0);
    for (auto& x : v) {
      x *= Rat(den);
      x.canonicalize();
      g = gcd(g, Int(x.get_num()));
    }
    if (g > 1)
      for (auto& x : v) {
        x /= Rat(g);
        x.canonicalize();
      }
    for (auto& x : v)
      if (x != 0) {
        if (x < 0)
          for (auto& y : v) y = -y;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> m) {
  if (m.empty()) return m;
  long n = static_cast<long>(m.size());
  long c = static_cast<long>(m[0].size());
  long row = 0;
  for (long col = 0; col < c && row < n; ++col) {
    // Euclid down the column.
    while (true) {
      long pr = -1;
      for (long i = row; i < n; ++i)
        if (m[i][col] != 0) {
          if (pr < 0 || abs(m[i][col]) < abs(m[pr][col])) pr = i;
        }
      if (pr < 0) break;
      std::swap(m[row], m[pr]);
      bool done = true;
      for (long i = row + 1; i < n; ++i) {
        if (m[i][col] == 0) continue;
        Int q = m[i][col] / m[row][col];
        // round toward quotient that reduces
        for (long j = 0; j < c; ++j) m[i][j] -= q * m[row][j];
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0)
      for (long j = 0; j < c; ++j) m[row][j] = -m[row][j];
    // reduce entries above the pivot
    for (long i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
      if (q != 0)
        for (long j = 0; j < c; ++j) m[i][j] -= q * m[row][j];
    }
    ++row;
  }
  m.resize(row);
  return m;
}

}  // namespace ellchi
