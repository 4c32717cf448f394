#include "pseudoexp/field/involution.hpp"

#include "pseudoexp/errors.hpp"

namespace pexp::field {

void Involution::add_real(Symbol s) {
  auto it = image_.find(s);
  if (it != image_.end()) {
    if (it->second == s) return;
    throw ConfigError("indeterminate '" + s.name() + "' is already paired with '" + it->second.name() + "'");
  }
  image_.emplace(s, s);
}

void Involution::add_pair(Symbol a, Symbol b) {
  if (a == b) throw ConfigError("cannot pair '" + a.name() + "' with itself");
  auto ia = image_.find(a);
  auto ib = image_.find(b);
  if (ia != image_.end() && ib != image_.end() && ia->second == b) return;
  if (ia != image_.end()) throw ConfigError("indeterminate '" + a.name() + "' is already registered");
  if (ib != image_.end()) throw ConfigError("indeterminate '" + b.name() + "' is already registered");
  image_.emplace(a, b);
  image_.emplace(b, a);
}

Symbol Involution::image(Symbol s) const {
  auto it = image_.find(s);
  if (it == image_.end()) throw ConfigError("indeterminate '" + s.name() + "' is not registered with the involution");
  return it->second;
}

std::vector<Symbol> Involution::reals() const {
  std::vector<Symbol> out;
  for (const auto& [a, b] : image_)
    if (a == b) out.push_back(a);
  return out;
}

std::vector<std::pair<Symbol, Symbol>> Involution::pairs() const {
  std::vector<std::pair<Symbol, Symbol>> out;
  for (const auto& [a, b] : image_)
    if (a < b) out.emplace_back(a, b);
  return out;
}

Polynomial Involution::apply(const Polynomial& p) const {
  return p.transformed([](const Scalar& c) { return c.conj(); }, [this](Symbol s) { return image(s); });
}

RatExpr Involution::apply(const RatExpr& e) const {
  return e.transformed([](const Scalar& c) { return c.conj(); }, [this](Symbol s) { return image(s); });
}

RatExpr sigma_apply(const RatExpr& e, const Involution& inv) { return inv.apply(e); }

RatExpr real_part(const RatExpr& e, const Involution& inv) {
  return (e + inv.apply(e)) * RatExpr(Scalar(Rational(1, 2)));
}

RatExpr imag_part(const RatExpr& e, const Involution& inv) {
  const Scalar two_i = Scalar(2) * Scalar::imaginary_unit();
  return (e - inv.apply(e)) * RatExpr(two_i.inverse());
}

RatExpr modulus_sq(const RatExpr& e, const Involution& inv) {
  if (e.is_zero()) throw MathError("squared modulus of zero");
  return e * inv.apply(e);
}

bool is_unit_circle(const RatExpr& e, const Involution& inv) {
  if (e.is_zero()) return false;
  const RatExpr m = e * inv.apply(e);
  return m.is_constant() && m.constant_value().is_one();
}

}  // namespace pexp::field
