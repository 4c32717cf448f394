#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pseudoexp/field/involution.hpp"

namespace pexp::field {

/// Deterministic allocator of fresh indeterminate names: base + counter,
/// with a seed-derived tag when the seed is nonzero. Names already
/// registered with the involution are skipped.
class NameSupply {
 public:
  explicit NameSupply(std::uint64_t seed = 0);

  Symbol fresh(const std::string& base, const Involution& taken);
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }
  void set_counter(std::uint64_t c) noexcept { counter_ = c; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::string tag_;
};

enum class ReembedKind {
  Monomial,  // u -> v^q (and the sigma-partner alongside)
  Circle,    // s -> s' with (1+is)/(1-is) = ((1+is')/(1-is'))^q
};

const char* to_string(ReembedKind k);

/// Record of a re-embedding of the function field, enough to replay it.
struct ReembedReceipt {
  ReembedKind kind = ReembedKind::Monomial;
  Symbol old_name;
  Symbol new_name;
  std::optional<Symbol> old_partner;
  std::optional<Symbol> new_partner;
  unsigned q = 1;
  std::map<Symbol, RatExpr> substitution;

  RatExpr apply(const RatExpr& e) const { return e.substitute(substitution); }
};

/// Allocates fresh names (registered with `inv` in the same sigma shape) and
/// returns the substitution. Throws MathError on q = 0, ConfigError when the
/// name is not registered or a circle parameter is not sigma-fixed.
ReembedReceipt reembed(Involution& inv, NameSupply& names, Symbol name, unsigned q,
                       ReembedKind kind = ReembedKind::Monomial);

/// ((1+it)^q - (1-it)^q) / (i ((1+it)^q + (1-it)^q)): the circle parameter
/// whose Cayley image is the q-th power of that of t.
RatExpr circle_power(const RatExpr& t, unsigned q);

}  // namespace pexp::field
