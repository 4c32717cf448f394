#include "pseudoexp/field/ratexpr.hpp"

#include <cctype>
#include <set>

#include "pseudoexp/errors.hpp"

namespace pexp::field {

namespace {

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("inexact division in rational function arithmetic");
  return std::move(*q);
}

}  // namespace

RatExpr RatExpr::from_coprime(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw MathError("division by zero");
  if (num.is_zero()) return RatExpr();
  const Scalar& lc = den.leading_coefficient();
  if (!lc.is_one()) {
    const Scalar inv = lc.inverse();
    num *= inv;
    den *= inv;
  }
  return RatExpr(std::move(num), std::move(den), 0);
}

RatExpr RatExpr::fraction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw MathError("division by zero");
  if (num.is_zero()) return RatExpr();
  if (den.is_constant()) return RatExpr(num * den.constant_value().inverse());
  if (num.is_constant()) return from_coprime(std::move(num), std::move(den));
  const Polynomial g = gcd(num, den);
  if (!g.is_constant()) {
    num = divide_exact(num, g);
    den = divide_exact(den, g);
  }
  return from_coprime(std::move(num), std::move(den));
}

Scalar RatExpr::constant_value() const {
  if (!is_constant()) throw MathError("expression is not constant: " + to_string());
  return num_.is_zero() ? Scalar(0) : num_.constant_value() / den_.constant_value();
}

std::vector<Symbol> RatExpr::variables() const {
  auto a = num_.variables();
  auto b = den_.variables();
  std::vector<Symbol> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RatExpr RatExpr::derivative(Symbol s) const {
  if (den_.is_constant()) return RatExpr(num_.derivative(s), den_, 0);
  // (n'd - nd') / d^2, gcd cancellation handled by fraction().
  return fraction(num_.derivative(s) * den_ - num_ * den_.derivative(s), den_ * den_);
}

RatExpr RatExpr::inverse() const {
  if (is_zero()) throw MathError("inverse of zero");
  return from_coprime(den_, num_);
}

RatExpr RatExpr::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  return RatExpr(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), 0);
}

RatExpr RatExpr::transformed(const std::function<Scalar(const Scalar&)>& f,
                             const std::function<Symbol(Symbol)>& rename) const {
  // A bijective rename and a field automorphism on constants keep coprimality.
  return from_coprime(num_.transformed(f, rename), den_.transformed(f, rename));
}

RatExpr RatExpr::rename(const std::map<Symbol, Symbol>& names) const {
  return transformed([](const Scalar& c) { return c; },
                     [&](Symbol s) {
                       auto it = names.find(s);
                       return it == names.end() ? s : it->second;
                     });
}

RatExpr RatExpr::substitute(const std::map<Symbol, RatExpr>& values) const {
  bool touches = false;
  for (const auto& [s, v] : values)
    if (contains(s)) {
      touches = true;
      break;
    }
  if (!touches) return *this;
  RatExpr n = evaluate(num_, values);
  if (den_.is_constant()) return n * RatExpr(den_.constant_value().inverse());
  return n / evaluate(den_, values);
}

RatExpr evaluate(const Polynomial& p, const std::map<Symbol, RatExpr>& values) {
  // Common denominator: prod d_s^(max degree of s).
  std::map<Symbol, unsigned> maxdeg;
  for (const auto& t : p.terms())
    for (const auto& [s, e] : t.monomial.powers())
      if (values.count(s)) maxdeg[s] = std::max(maxdeg[s], e);
  std::map<Symbol, std::vector<Polynomial>> num_pow, den_pow;
  for (const auto& [s, m] : maxdeg) {
    const RatExpr& v = values.at(s);
    auto& np = num_pow[s];
    auto& dp = den_pow[s];
    np.push_back(Polynomial(1));
    dp.push_back(Polynomial(1));
    for (unsigned k = 1; k <= m; ++k) {
      np.push_back(np.back() * v.num());
      dp.push_back(dp.back() * v.den());
    }
  }
  Polynomial num;
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::term(Monomial(), t.coeff);
    std::vector<Monomial::Power> kept;
    for (const auto& [s, e] : t.monomial.powers())
      if (!maxdeg.count(s)) kept.emplace_back(s, e);
    for (const auto& [s, m] : maxdeg) {
      const unsigned e = t.monomial.degree_in(s);
      if (e > 0) term *= num_pow[s][e];
      if (m > e) term *= den_pow[s][m - e];
    }
    if (!kept.empty()) term *= Polynomial::term(Monomial(std::move(kept)), Scalar(1));
    num += term;
  }
  Polynomial den(1);
  for (const auto& [s, m] : maxdeg) den *= den_pow[s][m];
  return RatExpr::fraction(std::move(num), std::move(den));
}

RatExpr RatExpr::operator-() const { return RatExpr(-num_, den_, 0); }

RatExpr& RatExpr::operator+=(const RatExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) return *this = fraction(num_ + o.num_, den_);
  const Polynomial g = gcd(den_, o.den_);
  if (g.is_constant()) {
    Polynomial n = num_ * o.den_ + o.num_ * den_;
    Polynomial d = den_ * o.den_;
    return *this = from_coprime(std::move(n), std::move(d));
  }
  const Polynomial a = divide_exact(o.den_, g);
  const Polynomial b = divide_exact(den_, g);
  Polynomial n = num_ * a + o.num_ * b;
  Polynomial d = den_ * a;
  // Any common factor of n and d divides g.
  const Polynomial h = gcd(n, g);
  if (!h.is_constant()) {
    n = divide_exact(n, h);
    d = divide_exact(d, h);
  }
  return *this = from_coprime(std::move(n), std::move(d));
}

RatExpr& RatExpr::operator-=(const RatExpr& o) { return *this += -o; }

RatExpr& RatExpr::operator*=(const RatExpr& o) {
  if (is_zero() || o.is_zero()) return *this = RatExpr();
  if (o.is_constant()) {
    num_ *= o.constant_value();
    return *this;
  }
  if (is_constant()) {
    const Scalar c = constant_value();
    *this = o;
    num_ *= c;
    return *this;
  }
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    const Polynomial g = gcd(a, d);
    if (!g.is_constant()) {
      a = divide_exact(a, g);
      d = divide_exact(d, g);
    }
  }
  if (!b.is_constant()) {
    const Polynomial g = gcd(c, b);
    if (!g.is_constant()) {
      c = divide_exact(c, g);
      b = divide_exact(b, g);
    }
  }
  return *this = from_coprime(a * c, b * d);
}

RatExpr& RatExpr::operator/=(const RatExpr& o) { return *this *= o.inverse(); }

std::string RatExpr::to_string() const {
  const std::string n = num_.to_string();
  if (den_.is_constant() && den_.constant_value().is_one()) return n;
  const bool n_single = num_.terms().size() <= 1 && (num_.is_zero() || num_.terms()[0].coeff.is_rational());
  const bool n_plain = n_single && (num_.terms().empty() || num_.terms()[0].coeff.rational() >= 0);
  const bool d_single = den_.terms().size() == 1 && den_.terms()[0].coeff.is_one();
  std::string out = n_plain ? n : "(" + n + ")";
  out += "/";
  out += d_single && den_.terms()[0].monomial.powers().size() == 1 ? den_.to_string() : "(" + den_.to_string() + ")";
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  long exponent() {
    bool neg = false;
    bool paren = accept('(');
    if (accept('-')) neg = true;
    Integer v = integer();
    if (paren) expect(')');
    if (!v.fits_slong_p()) fail("exponent too large");
    return neg ? -v.get_si() : v.get_si();
  }

  RatExpr expr() {
    RatExpr e = term();
    while (true) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  RatExpr term() {
    RatExpr e = unary();
    while (true) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        RatExpr d = unary();
        if (d.is_zero()) fail("division by zero");
        e /= d;
      } else {
        return e;
      }
    }
  }

  RatExpr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatExpr power() {
    RatExpr base = atom();
    if (accept('^')) {
      const long e = exponent();
      if (e < 0 && base.is_zero()) fail("zero to a negative power");
      return base.pow(e);
    }
    return base;
  }

  RatExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatExpr(Scalar(integer()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "i") return RatExpr(Scalar::imaginary_unit());
      if (name == "zeta") {
        expect('(');
        Integer n = integer();
        expect(')');
        if (n == 0 || !n.fits_uint_p() || n > 100000) fail("invalid root of unity order");
        return RatExpr(Scalar::zeta(static_cast<unsigned>(n.get_ui())));
      }
      if (!is_valid_name(name)) fail("invalid indeterminate name '" + std::string(name) + "'");
      return RatExpr::variable(name);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatExpr RatExpr::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace pexp::field
