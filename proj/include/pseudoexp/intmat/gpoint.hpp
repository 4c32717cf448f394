#pragma once

#include <vector>

#include "pseudoexp/field/ratexpr.hpp"
#include "pseudoexp/intmat/intmat.hpp"

namespace pexp::intmat {

using field::RatExpr;

/// Point <z; w> of G^n = (G_a x G_m)^n.
struct GPoint {
  std::vector<RatExpr> additive;
  std::vector<RatExpr> multiplicative;

  GPoint() = default;
  /// Throws DimensionError on length mismatch, MathError on a zero multiplicative entry.
  GPoint(std::vector<RatExpr> z, std::vector<RatExpr> w);
  static GPoint identity(std::size_t n);

  std::size_t n() const noexcept { return additive.size(); }
  GPoint inverse() const;
  friend bool operator==(const GPoint&, const GPoint&) = default;
};

/// Group law: componentwise sum on additive, product on multiplicative entries.
GPoint operator+(const GPoint& p, const GPoint& q);

/// M . p: additive part M z, multiplicative part (prod_j w_j^{m_ij})_i.
GPoint act(const IntMat& M, const GPoint& p);

/// Helpers shared with the varieties module.
std::vector<RatExpr> act_additive(const IntMat& M, const std::vector<RatExpr>& z);
std::vector<RatExpr> act_multiplicative(const IntMat& M, const std::vector<RatExpr>& w);

}  // namespace pexp::intmat
