#pragma once

#include <vector>

#include "ellchi/ints.hpp"

namespace ellchi {

// Dense matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(long rows, long cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Rat& at(long i, long j) { return e_[i * cols_ + j]; }
  const Rat& at(long i, long j) const { return e_[i * cols_ + j]; }

  static RationalMatrix identity(long n);
  RationalMatrix transpose() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const;         // M * v
  std::vector<Rat> apply_left(const std::vector<Rat>& v) const;    // v^T * M

 private:
  long rows_, cols_;
  std::vector<Rat> e_;
};

// Exact kernel basis via fraction-free (Bareiss) elimination.  Vectors are
// primitive integer vectors with positive leading entry, ordered by the
// free-column order of the elimination.
std::vector<std::vector<Rat>> rational_kernel(const RationalMatrix& m);

long rational_rank(const RationalMatrix& m);

// Hermite normal form of the row lattice of an integer matrix.  Returns the
// nonzero rows (basis of the lattice), pivots positive, entries below a
// pivot zero and entries above reduced into [0, pivot).
std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> m);

}  // namespace ellchi
