#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pseudoexp/field/modular.hpp"
#include "pseudoexp/field/transcendence.hpp"
#include "pseudoexp/intmat/intmat.hpp"

namespace pexp::field {

/// Differential rows of additive coordinates f_j: jacobian rows of f_j over
/// a common denominator, so that integer combinations of rows are the
/// differentials of the same combinations of the f_j (up to one factor).
PolyMatrix additive_rows(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt);
/// Rows of d log w_j over a common denominator. Integer combinations give
/// d log of the monomials prod w_j^{m_j}. Throws MathError on a zero entry.
PolyMatrix logarithmic_rows(const std::vector<RatExpr>& ws, const std::vector<Symbol>& wrt);

/// A fixed polynomial matrix P whose ranks rank(C * P) are requested for
/// many integer matrices C. The image of P at one modular point is kept;
/// symbolic elimination runs only when the modular rank falls short of
/// min(rank C, rank P).
class RowFrame {
 public:
  RowFrame() = default;
  explicit RowFrame(PolyMatrix rows, std::uint64_t seed = 0x51ed270b);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t rank() const noexcept { return rank_; }
  const PolyMatrix& matrix() const noexcept { return rows_; }

  /// Exact rank of C * P; C must have rows() columns.
  std::size_t rank_of(const intmat::IntMat& C) const;
  PolyMatrix combine(const intmat::IntMat& C) const;

 private:
  PolyMatrix rows_;
  std::size_t cols_ = 0;
  std::size_t rank_ = 0;
  std::optional<ModularEvaluator> ev_;
  std::vector<std::vector<std::uint64_t>> image_;
};

}  // namespace pexp::field
