#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace pexp::intmat {

using Integer = mpz_class;
using IntVec = std::vector<Integer>;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMat(std::initializer_list<std::initializer_list<long>> rows);
  static IntMat identity(std::size_t n);
  static IntMat scalar(std::size_t n, const Integer& q);
  /// All rows must have length `cols`.
  static IntMat from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  /// Row-major literal such as [[1,0],[0,1]].
  static IntMat parse(std::string_view text);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  IntVec row(std::size_t i) const;
  void set_row(std::size_t i, const IntVec& v);
  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  IntMat transpose() const;
  /// Rows [first, first + count).
  IntMat row_block(std::size_t first, std::size_t count) const;
  /// Columns [first, first + count).
  IntMat col_block(std::size_t first, std::size_t count) const;
  /// Vertical concatenation; column counts must agree (an empty 0x0 operand is allowed).
  static IntMat stack(const IntMat& top, const IntMat& bottom);
  /// Horizontal concatenation.
  static IntMat hcat(const IntMat& left, const IntMat& right);
  static IntMat block_diag(const IntMat& a, const IntMat& b);

  IntMat operator-() const;
  friend IntMat operator*(const IntMat& a, const IntMat& b);
  friend IntMat operator+(const IntMat& a, const IntMat& b);
  friend IntMat operator-(const IntMat& a, const IntMat& b);
  friend IntMat operator*(const Integer& c, const IntMat& a);
  friend bool operator==(const IntMat& a, const IntMat& b);
  friend bool operator<(const IntMat& a, const IntMat& b);

  /// Largest absolute entry.
  Integer height() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HermiteForm {
  IntMat H;  // row Hermite normal form, zero rows last
  IntMat U;  // unimodular, U * M = H
  std::size_t rank;
};

struct SmithForm {
  IntMat S;  // diagonal, each entry divides the next
  IntMat U;  // unimodular
  IntMat V;  // unimodular, U * M * V = S
};

struct Companion {
  IntMat adjoint;  // A~ with A~ * M = d * Id
  Integer d;       // |det M|
};

HermiteForm hnf(const IntMat& m);
SmithForm snf(const IntMat& m);
/// Rank over Q (fraction-free elimination).
std::size_t rank(const IntMat& m);
Integer det(const IntMat& m);
/// Throws MathError when M is not square or is singular.
Companion companion(const IntMat& m);

/// Basis (rows, in Hermite form) of the lattice {x in Z^rows : x M = 0}.
IntMat left_kernel(const IntMat& m);
/// Basis (rows, in Hermite form) of {x in Z^cols : M x = 0}.
IntMat right_kernel(const IntMat& m);
/// Hermite basis of (Q-row-span of M) intersected with Z^cols. Two matrices
/// have the same Q-row-span iff their saturations agree.
IntMat saturate(const IntMat& m);
/// Nonzero rows of the Hermite form of M.
IntMat row_basis(const IntMat& m);

}  // namespace pexp::intmat
