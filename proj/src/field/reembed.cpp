#include "pseudoexp/field/reembed.hpp"

#include "pseudoexp/errors.hpp"

namespace pexp::field {

NameSupply::NameSupply(std::uint64_t seed) : seed_(seed) {
  if (seed != 0) {
    static const char* digits = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::uint64_t s = seed;
    std::string t;
    while (s) {
      t.push_back(digits[s % 36]);
      s /= 36;
    }
    tag_ = "_" + t;
  }
}

Symbol NameSupply::fresh(const std::string& base, const Involution& taken) {
  while (true) {
    ++counter_;
    const std::string name = base + std::to_string(counter_) + tag_;
    Symbol s = Symbol::intern(name);
    if (!taken.registered(s)) return s;
  }
}

const char* to_string(ReembedKind k) { return k == ReembedKind::Monomial ? "monomial" : "circle"; }

RatExpr circle_power(const RatExpr& t, unsigned q) {
  const RatExpr i(Scalar::imaginary_unit());
  const RatExpr a = (RatExpr(1) + i * t).pow(q);
  const RatExpr b = (RatExpr(1) - i * t).pow(q);
  return (a - b) / (i * (a + b));
}

ReembedReceipt reembed(Involution& inv, NameSupply& names, Symbol name, unsigned q, ReembedKind kind) {
  if (q == 0) throw MathError("re-embedding needs q >= 1");
  const Symbol partner = inv.image(name);
  ReembedReceipt r;
  r.kind = kind;
  r.old_name = name;
  r.q = q;
  if (kind == ReembedKind::Circle) {
    if (partner != name) throw ConfigError("circle parameter '" + name.name() + "' is not sigma-fixed");
    r.new_name = names.fresh("s", inv);
    inv.add_real(r.new_name);
    r.substitution[name] = circle_power(RatExpr::variable(r.new_name), q);
    return r;
  }
  if (partner == name) {
    r.new_name = names.fresh("u", inv);
    inv.add_real(r.new_name);
    r.substitution[name] = RatExpr::variable(r.new_name).pow(q);
    return r;
  }
  r.new_name = names.fresh("x", inv);
  const Symbol np = names.fresh("y", inv);
  inv.add_pair(r.new_name, np);
  r.old_partner = partner;
  r.new_partner = np;
  r.substitution[name] = RatExpr::variable(r.new_name).pow(q);
  r.substitution[partner] = RatExpr::variable(np).pow(q);
  return r;
}

}  // namespace pexp::field
