#include "pseudoexp/field/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/field/modular.hpp"

namespace pexp::field {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Symbol s, unsigned e) {
  if (e > 0) powers_.emplace_back(s, e);
}

Monomial::Monomial(std::vector<Power> powers) : powers_(std::move(powers)) {
  std::sort(powers_.begin(), powers_.end(), [](const Power& a, const Power& b) { return a.first < b.first; });
  std::vector<Power> merged;
  for (const auto& p : powers_) {
    if (!merged.empty() && merged.back().first == p.first)
      merged.back().second += p.second;
    else
      merged.push_back(p);
  }
  std::erase_if(merged, [](const Power& p) { return p.second == 0; });
  powers_ = std::move(merged);
}

unsigned Monomial::degree_in(Symbol s) const {
  for (const auto& [v, e] : powers_)
    if (v == s) return e;
  return 0;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& p : powers_) d += p.second;
  return d;
}

Monomial Monomial::without(Symbol s) const {
  Monomial m;
  for (const auto& p : powers_)
    if (p.first != s) m.powers_.push_back(p);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  std::size_t j = 0;
  for (const auto& [v, e] : powers_) {
    while (j < other.powers_.size() && other.powers_[j].first < v) ++j;
    if (j == other.powers_.size() || other.powers_[j].first != v || other.powers_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial m;
  std::size_t i = 0;
  for (const auto& [v, e] : other.powers_) {
    unsigned d = e;
    if (i < powers_.size() && powers_[i].first == v) {
      d -= powers_[i].second;
      ++i;
    }
    if (d > 0) m.powers_.emplace_back(v, d);
  }
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  auto& out = m.powers_;
  out.reserve(a.powers_.size() + b.powers_.size());
  std::size_t i = 0, j = 0;
  while (i < a.powers_.size() || j < b.powers_.size()) {
    if (j == b.powers_.size() || (i < a.powers_.size() && a.powers_[i].first < b.powers_[j].first)) {
      out.push_back(a.powers_[i++]);
    } else if (i == a.powers_.size() || b.powers_[j].first < a.powers_[i].first) {
      out.push_back(b.powers_[j++]);
    } else {
      out.emplace_back(a.powers_[i].first, a.powers_[i].second + b.powers_[j].second);
      ++i;
      ++j;
    }
  }
  return m;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [v, e] : powers_) {
    if (!s.empty()) s += "*";
    s += v.name();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

int compare(const Monomial& a, const Monomial& b) {
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    if (pa[i].first == pb[j].first) {
      if (pa[i].second != pb[j].second) return pa[i].second > pb[j].second ? 1 : -1;
      ++i;
      ++j;
    } else if (pa[i].first < pb[j].first) {
      return 1;
    } else {
      return -1;
    }
  }
  if (i < pa.size()) return 1;
  if (j < pb.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Scalar& c) {
  if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(Symbol s) { return term(Monomial(s), Scalar(1)); }

Polynomial Polynomial::term(Monomial m, Scalar c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.monomial, b.monomial) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

Scalar Polynomial::constant_value() const {
  if (!is_constant()) throw MathError("polynomial is not constant: " + to_string());
  return terms_.empty() ? Scalar(0) : terms_[0].coeff;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw MathError("leading term of zero polynomial");
  return terms_.front();
}

std::vector<Symbol> Polynomial::variables() const {
  std::set<Symbol> vars;
  for (const auto& t : terms_)
    for (const auto& p : t.monomial.powers()) vars.insert(p.first);
  return {vars.begin(), vars.end()};
}

bool Polynomial::contains(Symbol s) const {
  for (const auto& t : terms_)
    if (t.monomial.degree_in(s) > 0) return true;
  return false;
}

unsigned Polynomial::degree_in(Symbol s) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree_in(s));
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.total_degree());
  return d;
}

unsigned Polynomial::common_level() const {
  unsigned l = 1;
  for (const auto& t : terms_) l = lcm_level(l, t.coeff.level());
  return l;
}

std::vector<Polynomial> Polynomial::coefficients_in(Symbol s) const {
  std::vector<std::vector<Term>> buckets(degree_in(s) + 1);
  for (const auto& t : terms_) buckets[t.monomial.degree_in(s)].push_back({t.monomial.without(s), t.coeff});
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  // Removing s keeps the relative lex order within a bucket.
  for (auto& b : buckets) {
    Polynomial p;
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

Polynomial Polynomial::from_coefficients_in(Symbol s, const std::vector<Polynomial>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) terms.push_back({t.monomial * Monomial(s, static_cast<unsigned>(k)), t.coeff});
  return from_terms(std::move(terms));
}

Polynomial Polynomial::derivative(Symbol s) const {
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    const unsigned e = t.monomial.degree_in(s);
    if (e == 0) continue;
    std::vector<Monomial::Power> powers;
    for (const auto& p : t.monomial.powers())
      if (p.first == s) {
        if (e > 1) powers.emplace_back(s, e - 1);
      } else {
        powers.push_back(p);
      }
    terms.push_back({Monomial(std::move(powers)), t.coeff * Scalar(static_cast<long>(e))});
  }
  return from_terms(std::move(terms));
}

Polynomial Polynomial::transformed(const std::function<Scalar(const Scalar&)>& f,
                                   const std::function<Symbol(Symbol)>& rename) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Monomial::Power> powers;
    for (const auto& p : t.monomial.powers()) powers.emplace_back(rename(p.first), p.second);
    terms.push_back({Monomial(std::move(powers)), f(t.coeff)});
  }
  return from_terms(std::move(terms));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const Scalar& lc = leading_coefficient();
  if (lc.is_one()) return *this;
  return *this * lc.inverse();
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == o.terms_.size())
      c = 1;
    else
      c = compare(terms_[i].monomial, o.terms_[j].monomial);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar s = terms_[i].coeff + o.terms_[j].coeff;
      if (!s.is_zero()) out.push_back({std::move(terms_[i].monomial), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 && a.terms_[0].monomial.is_one()) return b * a.terms_[0].coeff;
  if (b.terms_.size() == 1 && b.terms_[0].monomial.is_one()) return a * b.terms_[0].coeff;
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) terms.push_back({x.monomial * y.monomial, x.coeff * y.coeff});
  return Polynomial::from_terms(std::move(terms));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial)) return false;
    if (!(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const Scalar& c = t.coeff;
    const bool unit_mono = t.monomial.is_one();
    if (c.is_rational()) {
      Rational q = c.rational();
      const bool neg = q < 0;
      if (neg) q = -q;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      if (unit_mono)
        os << q.get_str();
      else if (q == 1)
        os << t.monomial.to_string();
      else
        os << q.get_str() << "*" << t.monomial.to_string();
    } else if (!c.is_compound()) {
      std::string cs = c.to_string();
      const bool neg = cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      os << cs;
      if (!unit_mono) os << "*" << t.monomial.to_string();
    } else {
      if (!first) os << " + ";
      os << "(" << c.to_string() << ")";
      if (!unit_mono) os << "*" << t.monomial.to_string();
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- division and gcd

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  if (a.is_zero()) return Polynomial();
  if (b.is_constant()) return a * b.constant_value().inverse();
  const Term& lb = b.leading_term();
  const Scalar lb_inv = lb.coeff.inverse();
  std::vector<Term> quotient;
  Polynomial r = a;
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!lb.monomial.divides(lr.monomial)) return std::nullopt;
    Term t{lb.monomial.quotient_of(lr.monomial), lr.coeff * lb_inv};
    r -= Polynomial::term(t.monomial, t.coeff) * b;
    quotient.push_back(std::move(t));
  }
  return Polynomial::from_terms(std::move(quotient));
}

namespace {

Polynomial must_divide(const Polynomial& a, const Polynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("expected exact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return *q;
}

// Pseudo-remainder of a by b with respect to s (deg_s b >= 1).
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, Symbol s) {
  const unsigned db = b.degree_in(s);
  const Polynomial lb = b.coefficients_in(s).back();
  while (!a.is_zero() && a.contains(s) && a.degree_in(s) >= db) {
    const unsigned da = a.degree_in(s);
    const Polynomial la = a.coefficients_in(s).back();
    a = lb * a - la * Polynomial::term(Monomial(s, da - db), Scalar(1)) * b;
  }
  if (!a.is_zero() && db == 0) return {};
  return a;
}

Polynomial gcd_list(const std::vector<Polynomial>& ps) {
  Polynomial g;
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (!g.is_zero() && g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial primitive_part_in(const Polynomial& p, Symbol s) { return must_divide(p, content_in(p, s)); }

using UModPoly = std::vector<std::uint64_t>;

void trim_mod(UModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Image of f in F_p[x] with the other indeterminates specialized.
std::optional<UModPoly> univariate_image(const Polynomial& f, Symbol x, const ModularEvaluator& ev) {
  UModPoly out(f.degree_in(x) + 1, 0);
  for (const auto& t : f.terms()) {
    auto c = ev.eval(t.coeff);
    if (!c) return std::nullopt;
    std::uint64_t v = *c;
    unsigned e = 0;
    for (const auto& [s, k] : t.monomial.powers()) {
      if (s == x)
        e = k;
      else
        v = ev.mul(v, ev.pow(ev.point(s), k));
    }
    out[e] = ev.add(out[e], v);
  }
  return out;
}

std::size_t gcd_degree_mod(UModPoly a, UModPoly b, const ModularEvaluator& ev) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    // a <- a mod b
    const std::uint64_t inv = ev.inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t f = ev.mul(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = ev.sub(a[shift + j], ev.mul(f, b[j]));
      trim_mod(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True when a and b are certainly coprime: for every shared indeterminate x,
// a specialization of the other indeterminates that keeps both x-degrees
// has coprime images. A nonconstant common factor would survive in at
// least one of them.
bool certified_coprime(const Polynomial& a, const Polynomial& b) {
  const auto va = a.variables();
  const auto vb = b.variables();
  std::vector<Symbol> shared;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(shared));
  const unsigned level = lcm_level(a.common_level(), b.common_level());
  const ModularEvaluator ev(level, 0x51ed27);
  for (Symbol x : shared) {
    auto ia = univariate_image(a, x, ev);
    auto ib = univariate_image(b, x, ev);
    if (!ia || !ib) return false;
    if (ia->back() == 0 || ib->back() == 0) return false;
    if (gcd_degree_mod(*ia, *ib, ev) != 0) return false;
  }
  return true;
}

}  // namespace

Polynomial content_in(const Polynomial& p, Symbol s) {
  if (p.is_zero()) return {};
  auto coeffs = p.coefficients_in(s);
  std::erase_if(coeffs, [](const Polynomial& c) { return c.is_zero(); });
  return gcd_list(coeffs);
}

Polynomial content_wrt(const Polynomial& p, const std::vector<Symbol>& vars) {
  if (p.is_zero()) return {};
  // Group terms by their monomial in `vars`.
  std::map<std::vector<Monomial::Power>, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Power> key, rest;
    for (const auto& pw : t.monomial.powers())
      (std::find(vars.begin(), vars.end(), pw.first) != vars.end() ? key : rest).push_back(pw);
    groups[key].push_back({Monomial(std::move(rest)), t.coeff});
  }
  std::vector<Polynomial> coeffs;
  for (auto& [k, terms] : groups) coeffs.push_back(Polynomial::from_terms(std::move(terms)));
  return gcd_list(coeffs);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a.monic();

  const auto va = a.variables();
  const auto vb = b.variables();
  for (Symbol s : va)
    if (!std::binary_search(vb.begin(), vb.end(), s)) return gcd(content_in(a, s), b);
  for (Symbol s : vb)
    if (!std::binary_search(va.begin(), va.end(), s)) return gcd(a, content_in(b, s));

  if (certified_coprime(a, b)) return Polynomial(1);

  const Symbol s = va.front();
  const Polynomial ca = content_in(a, s);
  const Polynomial cb = content_in(b, s);
  const Polynomial c = gcd(ca, cb);
  Polynomial r0 = must_divide(a, ca).monic();
  Polynomial r1 = must_divide(b, cb).monic();
  if (r0.degree_in(s) < r1.degree_in(s)) std::swap(r0, r1);
  Polynomial g;
  while (true) {
    Polynomial r = pseudo_remainder(r0, r1, s);
    if (r.is_zero()) {
      g = r1;
      break;
    }
    if (!r.contains(s)) {
      g = Polynomial(1);
      break;
    }
    r = primitive_part_in(r, s).monic();
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return (c * g).monic();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (must_divide(a, gcd(a, b)) * b).monic();
}

}  // namespace pexp::field
