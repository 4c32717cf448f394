#pragma once

#include <random>
#include <string>
#include <vector>

#include "pseudoexp/field/ratexpr.hpp"
#include "pseudoexp/intmat/intmat.hpp"

namespace testing {

using pexp::field::Polynomial;
using pexp::field::RatExpr;
using pexp::field::Rational;
using pexp::field::Scalar;
using pexp::field::Symbol;
using pexp::intmat::IntMat;

inline RatExpr parse(const std::string& s) { return RatExpr::parse(s); }

/// Small seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational() {
    Rational q(integer(-6, 6), integer(1, 4));
    q.canonicalize();
    return q;
  }

  Scalar scalar() {
    switch (integer(0, 3)) {
      case 0:
        return Scalar(rational());
      case 1:
        return Scalar(rational()) + Scalar(rational()) * Scalar::imaginary_unit();
      case 2:
        return Scalar(rational()) * Scalar::zeta(3, integer(0, 2)) + Scalar(rational());
      default:
        return Scalar(rational()) * Scalar::zeta(5, integer(0, 4));
    }
  }

  Polynomial polynomial(const std::vector<Symbol>& vars, int terms = 3, unsigned maxdeg = 2) {
    std::vector<pexp::field::Term> ts;
    const int n = static_cast<int>(integer(1, terms));
    for (int k = 0; k < n; ++k) {
      std::vector<pexp::field::Monomial::Power> pw;
      for (Symbol s : vars) {
        const unsigned e = static_cast<unsigned>(integer(0, maxdeg));
        if (e) pw.emplace_back(s, e);
      }
      ts.push_back({pexp::field::Monomial(std::move(pw)), scalar()});
    }
    return Polynomial::from_terms(std::move(ts));
  }

  RatExpr ratexpr(const std::vector<Symbol>& vars) {
    Polynomial n = polynomial(vars);
    Polynomial d = polynomial(vars, 2, 1);
    if (d.is_zero()) d = Polynomial(1);
    return RatExpr::fraction(n, d);
  }

  RatExpr nonzero_ratexpr(const std::vector<Symbol>& vars) {
    while (true) {
      RatExpr e = ratexpr(vars);
      if (!e.is_zero()) return e;
    }
  }

  IntMat matrix(std::size_t r, std::size_t c, long bound) {
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(-bound, bound);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Symbol> syms(std::initializer_list<const char*> names) {
  std::vector<Symbol> out;
  for (const char* n : names) out.push_back(Symbol::intern(n));
  return out;
}

}  // namespace testing
