#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pseudoexp/field/scalar.hpp"
#include "pseudoexp/field/symbol.hpp"

namespace pexp::field {

/// Power product of indeterminates, powers sorted by symbol name.
class Monomial {
 public:
  using Power = std::pair<Symbol, unsigned>;

  Monomial() = default;
  explicit Monomial(Symbol s, unsigned e = 1);
  explicit Monomial(std::vector<Power> powers);

  const std::vector<Power>& powers() const noexcept { return powers_; }
  bool is_one() const noexcept { return powers_.empty(); }
  unsigned degree_in(Symbol s) const;
  unsigned total_degree() const;

  Monomial without(Symbol s) const;
  bool divides(const Monomial& other) const;
  /// other / this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string to_string() const;

 private:
  std::vector<Power> powers_;
};

/// Lexicographic order, the alphabetically first indeterminate most significant.
int compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Scalar coeff;
};

/// Sparse multivariate polynomial over cyclotomic scalars, terms kept in
/// strictly decreasing lex order with nonzero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Scalar& c);  // NOLINT
  Polynomial(long c) : Polynomial(Scalar(c)) {}  // NOLINT
  static Polynomial variable(Symbol s);
  static Polynomial term(Monomial m, Scalar c);
  /// Sorts and merges arbitrary terms.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  Scalar constant_value() const;  // requires is_constant()
  const Term& leading_term() const;
  const Scalar& leading_coefficient() const { return leading_term().coeff; }

  std::vector<Symbol> variables() const;
  bool contains(Symbol s) const;
  unsigned degree_in(Symbol s) const;
  unsigned total_degree() const;
  unsigned common_level() const;

  /// Coefficients of powers of `s`, index = exponent.
  std::vector<Polynomial> coefficients_in(Symbol s) const;
  static Polynomial from_coefficients_in(Symbol s, const std::vector<Polynomial>& coeffs);

  Polynomial derivative(Symbol s) const;
  /// Applies `f` to every coefficient and renames indeterminates via `rename`.
  Polynomial transformed(const std::function<Scalar(const Scalar&)>& f,
                         const std::function<Symbol(Symbol)>& rename) const;
  Polynomial monic() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned e) const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// a / b when b divides a exactly, otherwise nullopt.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
/// Greatest common divisor, monic (leading coefficient 1), gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// gcd of the coefficients of `p` viewed as a polynomial in `s`.
Polynomial content_in(const Polynomial& p, Symbol s);
/// Content with respect to a set of indeterminates: gcd of the coefficients
/// of `p` viewed as a polynomial in `vars` over the remaining ones.
Polynomial content_wrt(const Polynomial& p, const std::vector<Symbol>& vars);
Polynomial lcm(const Polynomial& a, const Polynomial& b);

}  // namespace pexp::field
