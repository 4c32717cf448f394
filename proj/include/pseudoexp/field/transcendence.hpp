#pragma once

#include <cstdint>
#include <vector>

#include "pseudoexp/field/ratexpr.hpp"

namespace pexp::field {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Rank over the rational function field by fraction-free (Bareiss)
/// elimination with exact division.
std::size_t bareiss_rank(PolyMatrix m);

/// Exact rank. A modular evaluation gives a certified lower bound; when it
/// reaches min(nonzero rows, nonzero columns) it is the answer, otherwise
/// Bareiss decides.
std::size_t polynomial_matrix_rank(const PolyMatrix& m, std::uint64_t seed = 0x9e3779b9);

/// Row of partial derivatives of f = n/d with respect to `wrt`, scaled by
/// d^2: entries n_x d - n d_x.
std::vector<Polynomial> jacobian_row(const RatExpr& f, const std::vector<Symbol>& wrt);

std::size_t jacobian_rank(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt);

/// Sorted union of the indeterminates of `fs`.
std::vector<Symbol> variables_of(const std::vector<RatExpr>& fs);

/// Transcendence degree of fs over the constants adjoined with `over`:
/// rank J(fs ++ over) - rank J(over). Derivatives are taken with respect to
/// `wrt`, or every indeterminate in sight when `wrt` is empty; indeterminates
/// outside `wrt` behave as constants.
std::size_t tr_deg(const std::vector<RatExpr>& fs, const std::vector<RatExpr>& over = {},
                   const std::vector<Symbol>& wrt = {});

}  // namespace pexp::field
