#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pseudoexp/field/polynomial.hpp"

namespace pexp::field {

/// Reduction of Z[1/n][zeta_L][x...] into F_p at a pseudo-random point,
/// with p = 1 mod L prime near 2^62 and zeta_L sent to an element of exact
/// order L. Any nonzero minor of the image is nonzero upstairs, which makes
/// ranks computed here certified lower bounds.
class ModularEvaluator {
 public:
  ModularEvaluator(unsigned level, std::uint64_t seed);

  std::uint64_t prime() const noexcept { return p_; }
  unsigned level() const noexcept { return level_; }
  /// nullopt when a denominator vanishes mod p or the level is not a divisor of L.
  std::optional<std::uint64_t> eval(const Scalar& c) const;
  std::optional<std::uint64_t> eval(const Polynomial& f) const;
  /// The coordinate assigned to an indeterminate (depends on its name and the seed).
  std::uint64_t point(Symbol s) const;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

 private:
  unsigned level_;
  std::uint64_t seed_;
  std::uint64_t p_;
  std::vector<std::uint64_t> zeta_powers_;  // h^k for k < L
};

/// Rank of a matrix over F_p (entries reduced mod p).
std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m, const ModularEvaluator& ev);

bool is_prime_u64(std::uint64_t n);

}  // namespace pexp::field
