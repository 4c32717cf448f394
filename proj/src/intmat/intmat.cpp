#include "pseudoexp/intmat/intmat.hpp"

#include <json.hpp>
#include <sstream>

#include "pseudoexp/errors.hpp"

namespace pexp::intmat {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMat IntMat::identity(std::size_t n) { return scalar(n, 1); }

IntMat IntMat::scalar(std::size_t n, const Integer& q) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = q;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

IntMat IntMat::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("bad matrix literal '" + std::string(text) + "': " + e.what());
  }
  if (!j.is_array()) throw ParseError("matrix literal must be a list of rows");
  std::vector<IntVec> rows;
  std::size_t cols = 0;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix row must be a list");
    IntVec v;
    for (const auto& x : r) {
      if (x.is_number_integer())
        v.emplace_back(x.get<long>());
      else if (x.is_string())
        v.emplace_back(x.get<std::string>());
      else
        throw ParseError("matrix entries must be integers");
    }
    if (!rows.empty() && v.size() != cols) throw ParseError("ragged matrix literal");
    cols = v.size();
    rows.push_back(std::move(v));
  }
  return from_rows(rows, cols);
}

IntVec IntMat::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

void IntMat::set_row(std::size_t i, const IntVec& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<long>(i * cols_));
}

bool IntMat::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat IntMat::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw DimensionError("row block out of range");
  IntMat m(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
  return m;
}

IntMat IntMat::col_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw DimensionError("column block out of range");
  IntMat m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

IntMat IntMat::stack(const IntMat& top, const IntMat& bottom) {
  if (top.rows_ == 0 && top.cols_ == 0) return bottom;
  if (bottom.rows_ == 0 && bottom.cols_ == 0) return top;
  if (top.cols_ != bottom.cols_) throw DimensionError("stack: column counts differ");
  IntMat m(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(), m.data_.begin() + static_cast<long>(top.data_.size()));
  return m;
}

IntMat IntMat::hcat(const IntMat& left, const IntMat& right) {
  if (left.rows_ != right.rows_) throw DimensionError("hcat: row counts differ");
  IntMat m(left.rows_, left.cols_ + right.cols_);
  for (std::size_t i = 0; i < left.rows_; ++i) {
    for (std::size_t j = 0; j < left.cols_; ++j) m(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, left.cols_ + j) = right(i, j);
  }
  return m;
}

IntMat IntMat::block_diag(const IntMat& a, const IntMat& b) {
  IntMat m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

IntMat IntMat::operator-() const {
  IntMat m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                         std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  IntMat m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum: shapes differ");
  IntMat m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
  return m;
}

IntMat operator-(const IntMat& a, const IntMat& b) { return a + (-b); }

IntMat operator*(const Integer& c, const IntMat& a) {
  IntMat m = a;
  for (auto& x : m.data_) x *= c;
  return m;
}

bool operator==(const IntMat& a, const IntMat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool operator<(const IntMat& a, const IntMat& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return a.data_ < b.data_;
}

Integer IntMat::height() const {
  Integer h = 0;
  for (const auto& x : data_)
    if (abs(x) > h) h = abs(x);
  return h;
}

std::string IntMat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << (*this)(i, j).get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- normal forms

namespace {

// Replace rows (r, s) of m by (x R_r + y R_s, u R_r + v R_s).
void combine_rows(IntMat& m, std::size_t r, std::size_t s, const Integer& x, const Integer& y, const Integer& u,
                  const Integer& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer a = m(r, j), b = m(s, j);
    m(r, j) = x * a + y * b;
    m(s, j) = u * a + v * b;
  }
}

void add_row_multiple(IntMat& m, std::size_t target, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += q * m(src, j);
}

void add_col_multiple(IntMat& m, std::size_t target, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += q * m(i, src);
}

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntMat& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMat& m) {
  IntMat H = m;
  IntMat U = IntMat::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (std::size_t i = r + 1; i < H.rows(); ++i) {
      if (H(i, c) == 0) continue;
      Integer a = H(r, c), b = H(i, c), g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Integer u = -b / g, v = a / g;
      combine_rows(H, r, i, x, y, u, v);
      combine_rows(U, r, i, x, y, u, v);
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(H(i, c), H(r, c));
      add_row_multiple(H, i, r, -q);
      add_row_multiple(U, i, r, -q);
    }
    ++r;
  }
  return {std::move(H), std::move(U), r};
}

SmithForm snf(const IntMat& m) {
  IntMat S = m;
  IntMat U = IntMat::identity(m.rows());
  IntMat V = IntMat::identity(m.cols());
  const std::size_t lim = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < lim; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = S.rows(), pj = 0;
      for (std::size_t i = t; i < S.rows(); ++i)
        for (std::size_t j = t; j < S.cols(); ++j)
          if (S(i, j) != 0 && (pi == S.rows() || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == S.rows()) break;
      swap_rows(S, t, pi);
      swap_rows(U, t, pi);
      swap_cols(S, t, pj);
      swap_cols(V, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < S.rows(); ++i) {
        const Integer q = floor_div(S(i, t), S(t, t));
        add_row_multiple(S, i, t, -q);
        add_row_multiple(U, i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < S.cols(); ++j) {
        const Integer q = floor_div(S(t, j), S(t, t));
        add_col_multiple(S, j, t, -q);
        add_col_multiple(V, j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < S.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < S.cols(); ++j)
          if (S(i, j) % S(t, t) != 0) {
            add_row_multiple(S, t, i, 1);
            add_row_multiple(U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      negate_row(S, t);
      negate_row(U, t);
    }
  }
  return {std::move(S), std::move(U), std::move(V)};
}

std::size_t rank(const IntMat& m) {
  IntMat a = m;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    swap_rows(a, r, piv);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Integer det(const IntMat& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      swap_rows(a, k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Companion companion(const IntMat& m) {
  if (!m.is_square()) throw MathError("companion requires a square matrix");
  const std::size_t n = m.rows();
  const Integer d = det(m);
  if (d == 0) throw MathError("companion requires a matrix of full rank");
  // Gauss-Jordan over Q on [M | I]; adj = det * M^{-1}.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    const mpq_class inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  const Integer ad = abs(d);
  IntMat adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = a[i][n + j] * ad;
      v.canonicalize();
      if (v.get_den() != 1) throw std::logic_error("companion: non-integral adjugate");
      adj(i, j) = v.get_num();
    }
  return {std::move(adj), ad};
}

IntMat row_basis(const IntMat& m) {
  HermiteForm h = hnf(m);
  return h.H.row_block(0, h.rank);
}

IntMat left_kernel(const IntMat& m) {
  HermiteForm h = hnf(m);
  const std::size_t k = m.rows() - h.rank;
  if (k == 0) return IntMat(0, m.rows());
  return row_basis(h.U.row_block(h.rank, k));
}

IntMat right_kernel(const IntMat& m) { return left_kernel(m.transpose()); }

IntMat saturate(const IntMat& m) {
  const IntMat k = right_kernel(m);
  if (k.rows() == 0) return IntMat::identity(m.cols());
  return left_kernel(k.transpose());
}

}  // namespace pexp::intmat
