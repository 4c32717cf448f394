#include "pseudoexp/field/frame.hpp"

#include <algorithm>

#include "pseudoexp/errors.hpp"

namespace pexp::field {

namespace {

// Multiplies each row by common / denominator_j.
PolyMatrix over_common_denominator(PolyMatrix rows, const std::vector<Polynomial>& dens) {
  Polynomial common(1);
  for (const auto& d : dens) common = lcm(common, d);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    auto f = exact_divide(common, dens[j]);
    if (!f) throw std::logic_error("lcm is not a multiple");
    if (f->is_constant() && f->constant_value().is_one()) continue;
    for (auto& e : rows[j])
      if (!e.is_zero()) e = e * *f;
  }
  return rows;
}

}  // namespace

PolyMatrix additive_rows(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt) {
  PolyMatrix rows;
  std::vector<Polynomial> dens;
  for (const auto& f : fs) {
    rows.push_back(jacobian_row(f, wrt));
    dens.push_back(f.den() * f.den());
  }
  return over_common_denominator(std::move(rows), dens);
}

PolyMatrix logarithmic_rows(const std::vector<RatExpr>& ws, const std::vector<Symbol>& wrt) {
  PolyMatrix rows;
  std::vector<Polynomial> dens;
  for (const auto& w : ws) {
    if (w.is_zero()) throw MathError("logarithmic derivative of zero");
    // d(n/d) / (n/d) = (n' d - n d') / (n d)
    rows.push_back(jacobian_row(w, wrt));
    dens.push_back(w.num() * w.den());
  }
  return over_common_denominator(std::move(rows), dens);
}

RowFrame::RowFrame(PolyMatrix rows, std::uint64_t seed) : rows_(std::move(rows)) {
  if (rows_.empty()) return;
  cols_ = rows_[0].size();
  rank_ = polynomial_matrix_rank(rows_, seed);
  unsigned level = 1;
  for (const auto& r : rows_)
    for (const auto& e : r) level = lcm_level(level, e.common_level());
  ev_.emplace(level, seed);
  image_.assign(rows_.size(), std::vector<std::uint64_t>(cols_));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      auto v = ev_->eval(rows_[i][j]);
      if (!v) {
        ev_.reset();
        image_.clear();
        return;
      }
      image_[i][j] = *v;
    }
}

PolyMatrix RowFrame::combine(const intmat::IntMat& C) const {
  if (C.cols() != rows_.size()) throw DimensionError("combination matrix has the wrong number of columns");
  PolyMatrix out(C.rows(), std::vector<Polynomial>(cols_));
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (C(i, k) == 0) continue;
      const Scalar c(C(i, k));
      for (std::size_t j = 0; j < cols_; ++j)
        if (!rows_[k][j].is_zero()) out[i][j] += rows_[k][j] * c;
    }
  return out;
}

std::size_t RowFrame::rank_of(const intmat::IntMat& C) const {
  if (C.cols() != rows_.size()) throw DimensionError("combination matrix has the wrong number of columns");
  if (rank_ == 0 || C.rows() == 0) return 0;
  std::size_t upper = std::min(C.rows(), rank_);
  if (ev_) {
    const std::uint64_t p = ev_->prime();
    std::vector<std::vector<std::uint64_t>> m(C.rows(), std::vector<std::uint64_t>(cols_, 0));
    for (std::size_t i = 0; i < C.rows(); ++i)
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (C(i, k) == 0) continue;
        const std::uint64_t c = mpz_fdiv_ui(C(i, k).get_mpz_t(), p);
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] = ev_->add(m[i][j], ev_->mul(c, image_[k][j]));
      }
    const std::size_t r = rank_mod_p(std::move(m), *ev_);
    if (r == upper) return r;
    upper = std::min(intmat::rank(C), rank_);
    if (r == upper) return r;
  }
  return polynomial_matrix_rank(combine(C));
}

}  // namespace pexp::field
