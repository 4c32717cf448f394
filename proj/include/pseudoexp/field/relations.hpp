#pragma once

#include <optional>
#include <vector>

#include "pseudoexp/field/ratexpr.hpp"
#include "pseudoexp/intmat/intmat.hpp"

namespace pexp::field {

enum class ConstantKind { One, RootOfUnity, Other };

const char* to_string(ConstantKind k);

/// The constant a relation generator produces on the source tuple.
struct RelationNote {
  RatExpr constant;
  ConstantKind kind = ConstantKind::Other;
  unsigned long order = 0;  // for roots of unity
};

/// Sublattice of Z^m given by a Hermite basis (one generator per row).
struct RelationLattice {
  intmat::IntMat generators;
  std::vector<RelationNote> notes;

  std::size_t rank() const noexcept { return generators.rows(); }
  bool empty() const noexcept { return generators.rows() == 0; }
};

/// Integer vectors m with sum m_j f_j constant, i.e. with vanishing
/// derivative in every indeterminate of `wrt` (default: all of them).
RelationLattice q_linear_relations(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt = {});

/// Integer vectors m with sum m_j f_j = 0 exactly.
intmat::IntMat linear_relations(const std::vector<RatExpr>& fs);
/// Dimension of the Q-span of fs.
std::size_t linear_dimension(const std::vector<RatExpr>& fs);
/// Rational coordinates of x in the span of `basis` (assumed Q-independent),
/// or nullopt when x lies outside it.
std::optional<std::vector<Rational>> linear_coordinates(const std::vector<RatExpr>& basis, const RatExpr& x);

/// Integer vectors m with prod f_j^{m_j} constant with respect to `wrt`
/// (default: all indeterminates). Throws MathError on a zero entry.
RelationLattice mult_relations(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt = {});

/// Pairwise coprime non-constant monic polynomials such that every input is
/// a constant times a product of them.
std::vector<Polynomial> coprime_base(const std::vector<Polynomial>& ps);

}  // namespace pexp::field
