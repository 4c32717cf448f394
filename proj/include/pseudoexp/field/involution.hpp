#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pseudoexp/field/ratexpr.hpp"

namespace pexp::field {

/// The automorphism sigma of order two: an involutive permutation of
/// indeterminate names composed with complex conjugation of constants.
/// Every indeterminate an expression mentions has to be registered.
class Involution {
 public:
  /// Registers a sigma-fixed ("real") indeterminate.
  void add_real(Symbol s);
  /// Registers two indeterminates swapped by sigma.
  void add_pair(Symbol a, Symbol b);

  bool registered(Symbol s) const { return image_.count(s) != 0; }
  Symbol image(Symbol s) const;
  bool is_real(Symbol s) const { return image(s) == s; }

  std::vector<Symbol> reals() const;
  /// Each swapped pair once, smaller name first.
  std::vector<std::pair<Symbol, Symbol>> pairs() const;
  const std::map<Symbol, Symbol>& mapping() const noexcept { return image_; }

  Scalar apply(const Scalar& c) const { return c.conj(); }
  Polynomial apply(const Polynomial& p) const;
  RatExpr apply(const RatExpr& e) const;

  friend bool operator==(const Involution&, const Involution&) = default;

 private:
  std::map<Symbol, Symbol> image_;
};

RatExpr sigma_apply(const RatExpr& e, const Involution& inv);
/// (e + sigma e) / 2
RatExpr real_part(const RatExpr& e, const Involution& inv);
/// (e - sigma e) / (2i)
RatExpr imag_part(const RatExpr& e, const Involution& inv);
/// e * sigma(e); throws MathError on e = 0.
RatExpr modulus_sq(const RatExpr& e, const Involution& inv);
/// e * sigma(e) == 1
bool is_unit_circle(const RatExpr& e, const Involution& inv);

}  // namespace pexp::field
