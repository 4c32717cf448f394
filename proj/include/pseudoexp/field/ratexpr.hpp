#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pseudoexp/field/polynomial.hpp"

namespace pexp::field {

/// Rational function num/den over cyclotomic scalars. Canonical form:
/// gcd(num, den) = 1 and den monic, so equal functions compare equal
/// structurally.
class RatExpr {
 public:
  RatExpr() : den_(1) {}
  RatExpr(const Scalar& c) : num_(c), den_(1) {}  // NOLINT
  RatExpr(long c) : RatExpr(Scalar(c)) {}  // NOLINT
  RatExpr(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT

  static RatExpr variable(Symbol s) { return RatExpr(Polynomial::variable(s)); }
  static RatExpr variable(std::string_view name) { return variable(Symbol::intern(name)); }
  /// num/den, reduced to canonical form. Throws MathError when den = 0.
  static RatExpr fraction(Polynomial num, Polynomial den);
  /// Parses the expression grammar: integers, `i`, `zeta(N)`, names,
  /// + - * / ^ (integer exponent) and parentheses.
  static RatExpr parse(std::string_view text);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  Scalar constant_value() const;  // requires is_constant()
  std::vector<Symbol> variables() const;
  bool contains(Symbol s) const { return num_.contains(s) || den_.contains(s); }
  unsigned common_level() const { return lcm_level(num_.common_level(), den_.common_level()); }

  RatExpr derivative(Symbol s) const;
  RatExpr inverse() const;
  RatExpr pow(long e) const;
  RatExpr transformed(const std::function<Scalar(const Scalar&)>& f,
                      const std::function<Symbol(Symbol)>& rename) const;
  /// Simultaneous substitution of indeterminates.
  RatExpr substitute(const std::map<Symbol, RatExpr>& values) const;
  RatExpr rename(const std::map<Symbol, Symbol>& names) const;

  RatExpr operator-() const;
  RatExpr& operator+=(const RatExpr& o);
  RatExpr& operator-=(const RatExpr& o);
  RatExpr& operator*=(const RatExpr& o);
  RatExpr& operator/=(const RatExpr& o);
  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
  friend RatExpr operator-(RatExpr a, const RatExpr& b) { return a -= b; }
  friend RatExpr operator*(RatExpr a, const RatExpr& b) { return a *= b; }
  friend RatExpr operator/(RatExpr a, const RatExpr& b) { return a /= b; }
  friend bool operator==(const RatExpr& a, const RatExpr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Text accepted back by parse().
  std::string to_string() const;

 private:
  RatExpr(Polynomial num, Polynomial den, int) : num_(std::move(num)), den_(std::move(den)) {}
  /// Makes den monic; assumes num and den are already coprime.
  static RatExpr from_coprime(Polynomial num, Polynomial den);

  Polynomial num_;
  Polynomial den_;
};

/// Evaluates a polynomial at rational-function values of its indeterminates;
/// indeterminates without a value are kept.
RatExpr evaluate(const Polynomial& p, const std::map<Symbol, RatExpr>& values);

}  // namespace pexp::field
