#include "pseudoexp/field/modular.hpp"

#include <map>
#include <mutex>

#include "pseudoexp/errors.hpp"

namespace pexp::field {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 splitmix(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

struct PrimeData {
  u64 p;
  u64 h;  // element of exact order L
};

const PrimeData& prime_for_level(unsigned level) {
  static std::mutex mu;
  static std::map<unsigned, PrimeData> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(level); it != cache.end()) return it->second;
  u64 k = (u64{1} << 62) / level;
  u64 p = 0;
  for (;; --k) {
    p = k * level + 1;
    if (is_prime_u64(p)) break;
  }
  const auto factors = prime_factors(level);
  u64 h = 1;
  for (u64 a = 2;; ++a) {
    h = powmod(a, (p - 1) / level, p);
    bool ok = true;
    for (unsigned r : factors)
      if (powmod(h, level / r, p) == 1) ok = false;
    if (ok) break;
  }
  return cache.emplace(level, PrimeData{p, h}).first->second;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModularEvaluator::ModularEvaluator(unsigned level, u64 seed) : level_(level), seed_(seed) {
  if (level == 0) throw MathError("level must be positive");
  const PrimeData& pd = prime_for_level(level);
  p_ = pd.p;
  zeta_powers_.resize(level);
  u64 x = 1;
  for (unsigned k = 0; k < level; ++k) {
    zeta_powers_[k] = x;
    x = mulmod(x, pd.h, p_);
  }
}

u64 ModularEvaluator::mul(u64 a, u64 b) const { return mulmod(a, b, p_); }
u64 ModularEvaluator::add(u64 a, u64 b) const {
  u64 r = a + b;
  return r >= p_ ? r - p_ : r;
}
u64 ModularEvaluator::sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
u64 ModularEvaluator::pow(u64 a, u64 e) const { return powmod(a, e, p_); }
u64 ModularEvaluator::inv(u64 a) const { return powmod(a, p_ - 2, p_); }

std::optional<u64> ModularEvaluator::eval(const Scalar& c) const {
  if (level_ % c.level() != 0) return std::nullopt;
  const unsigned step = level_ / c.level();
  u64 acc = 0;
  const auto& co = c.coefficients();
  for (std::size_t k = 0; k < co.size(); ++k) {
    if (co[k] == 0) continue;
    const u64 nv = mpz_fdiv_ui(co[k].get_num_mpz_t(), p_);
    const u64 dv = mpz_fdiv_ui(co[k].get_den_mpz_t(), p_);
    if (dv == 0) return std::nullopt;
    const u64 term = mul(mul(nv, inv(dv)), zeta_powers_[(k * step) % level_]);
    acc = add(acc, term);
  }
  return acc;
}

u64 ModularEvaluator::point(Symbol s) const {
  u64 h = 1469598103934665603ULL;
  for (unsigned char ch : s.name()) h = (h ^ ch) * 1099511628211ULL;
  return splitmix(h ^ splitmix(seed_)) % p_;
}

std::optional<u64> ModularEvaluator::eval(const Polynomial& f) const {
  u64 acc = 0;
  for (const auto& t : f.terms()) {
    auto c = eval(t.coeff);
    if (!c) return std::nullopt;
    u64 v = *c;
    for (const auto& [s, e] : t.monomial.powers()) v = mul(v, pow(point(s), e));
    acc = add(acc, v);
  }
  return acc;
}

std::size_t rank_mod_p(std::vector<std::vector<u64>> m, const ModularEvaluator& ev) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const u64 iv = ev.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const u64 f = ev.mul(m[r][c], iv);
      for (std::size_t j = c; j < cols; ++j) m[r][j] = ev.sub(m[r][j], ev.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace pexp::field
