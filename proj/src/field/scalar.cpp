#include "pseudoexp/field/scalar.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "pseudoexp/errors.hpp"

namespace pexp::field {

namespace {

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Exact division of integer polynomials (lowest degree first), divisor monic.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<Integer> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    Integer c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

// Univariate polynomials over Q for the inverse computation.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Returns (quotient, remainder).
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {UPoly{}, a};
  const long db = static_cast<long>(b.size()) - 1;
  UPoly q(a.size() - b.size() + 1, Rational(0));
  for (long i = static_cast<long>(a.size()) - 1; i >= db; --i) {
    if (a[i] == 0) continue;
    Rational c = a[i] / b.back();
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void reduce_mod_phi(std::vector<Rational>& v, unsigned n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = v.size(); i-- > d;) {
    if (v[i] == 0) continue;
    Rational c = v[i];
    for (std::size_t j = 0; j <= d; ++j) v[i - d + j] -= c * phi[j];
  }
  v.resize(d, Rational(0));
}

}  // namespace

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

unsigned lcm_level(unsigned a, unsigned b) { return std::lcm(a, b); }

const std::vector<Integer>& cyclotomic_polynomial(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Integer>> cache;
  if (n == 0) throw MathError("cyclotomic level must be positive");
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned d : divisors(n)) {
    if (d == n) continue;
    poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(poly)).first->second;
}

Scalar Scalar::from_coefficients(unsigned level, std::vector<Rational> coeffs) {
  if (level == 0) throw MathError("cyclotomic level must be positive");
  if (coeffs.empty()) coeffs.push_back(Rational(0));
  reduce_mod_phi(coeffs, level);
  Scalar s(level, std::move(coeffs));
  s.normalize();
  return s;
}

Scalar Scalar::zeta(unsigned n, long k) {
  if (n == 0) throw MathError("zeta(0) is undefined");
  long kk = k % static_cast<long>(n);
  if (kk < 0) kk += n;
  std::vector<Rational> v(static_cast<std::size_t>(kk) + 1, Rational(0));
  v[kk] = 1;
  return from_coefficients(n, std::move(v));
}

void Scalar::normalize() {
  if (level_ == 1) return;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return;
  Rational c0 = coeffs_.empty() ? Rational(0) : coeffs_[0];
  level_ = 1;
  coeffs_.assign(1, c0);
}

bool Scalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_one() const { return level_ == 1 && coeffs_[0] == 1; }

const Rational& Scalar::rational() const {
  if (level_ != 1) throw MathError("scalar is not rational");
  return coeffs_[0];
}

Scalar Scalar::lifted(unsigned m) const {
  if (m == level_) return *this;
  if (m % level_ != 0) throw MathError("cannot lift cyclotomic level " + std::to_string(level_) + " to " + std::to_string(m));
  const unsigned step = m / level_;
  std::vector<Rational> v(coeffs_.size() * step + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k * step] = coeffs_[k];
  reduce_mod_phi(v, m);
  return Scalar(m, std::move(v));
}

Scalar Scalar::conj() const {
  if (level_ <= 2) return *this;
  std::vector<Rational> v(level_, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[(level_ - k) % level_] += coeffs_[k];
  return from_coefficients(level_, std::move(v));
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (level_ == 1 && o.level_ == 1) {
    coeffs_[0] += o.coeffs_[0];
    return *this;
  }
  const unsigned m = lcm_level(level_, o.level_);
  Scalar a = lifted(m);
  Scalar b = o.lifted(m);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  a.normalize();
  return *this = std::move(a);
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (level_ == 1 && o.level_ == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  if (o.level_ == 1) {
    for (auto& c : coeffs_) c *= o.coeffs_[0];
    normalize();
    return *this;
  }
  if (level_ == 1) {
    Rational c = coeffs_[0];
    *this = o;
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
  }
  const unsigned m = lcm_level(level_, o.level_);
  Scalar a = lifted(m);
  Scalar b = o.lifted(m);
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return *this = from_coefficients(m, std::move(v));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw MathError("division by zero scalar");
  if (level_ == 1) return Scalar(Rational(1) / coeffs_[0]);
  if (level_ == 4) {
    // (a + bi)^-1 = (a - bi) / (a^2 + b^2)
    const Rational n = coeffs_[0] * coeffs_[0] + coeffs_[1] * coeffs_[1];
    return from_coefficients(4, {coeffs_[0] / n, -coeffs_[1] / n});
  }
  // Extended Euclid: s*a + t*phi = 1.
  UPoly a = coeffs_;
  trim(a);
  const auto& phi_z = cyclotomic_polynomial(level_);
  UPoly phi(phi_z.begin(), phi_z.end());
  UPoly r0 = phi, r1 = a, s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since Phi is irreducible.
  Rational c = r0.at(0);
  for (auto& x : s0) x /= c;
  return from_coefficients(level_, std::move(s0));
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.level_ == b.level_) return a.coeffs_ == b.coeffs_;
  const unsigned m = lcm_level(a.level_, b.level_);
  return a.lifted(m).coeffs_ == b.lifted(m).coeffs_;
}

std::optional<unsigned long> Scalar::root_of_unity_order() const {
  if (is_zero()) return std::nullopt;
  if (level_ == 1) {
    if (coeffs_[0] == 1) return 1;
    if (coeffs_[0] == -1) return 2;
    return std::nullopt;
  }
  if (!(*this * conj()).is_one()) return std::nullopt;
  const unsigned w = lcm_level(2, level_);
  if (!pow(w).is_one()) return std::nullopt;
  for (unsigned d : divisors(w))
    if (pow(d).is_one()) return d;
  return w;
}

std::optional<unsigned long> Scalar::discrete_log(unsigned n) const {
  if (is_zero()) return std::nullopt;
  for (unsigned k = 0; k < n; ++k)
    if (zeta(n, k) == *this) return k;
  return std::nullopt;
}

std::optional<Scalar> Scalar::exact_root(unsigned q) const {
  if (q == 0) throw MathError("zeroth root requested");
  if (q == 1) return *this;
  if (is_zero()) return *this;
  if (auto ord = root_of_unity_order()) {
    auto k = discrete_log(static_cast<unsigned>(*ord));
    return zeta(static_cast<unsigned>(*ord * q), static_cast<long>(*k));
  }
  if (level_ != 1) return std::nullopt;
  Rational v = coeffs_[0];
  const bool negative = v < 0;
  if (negative) v = -v;
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), v.get_num_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), v.get_den_mpz_t(), q) == 0) return std::nullopt;
  Scalar root(Rational(rn, rd));
  if (negative) root *= zeta(2 * q, 1);
  return root;
}

bool Scalar::is_compound() const {
  int terms = 0;
  for (const auto& c : coeffs_)
    if (c != 0) ++terms;
  return terms > 1;
}

std::string Scalar::to_string() const {
  if (level_ == 1) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    Rational c = coeffs_[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string unit;
    if (k > 0) {
      unit = level_ == 4 ? std::string("i") : "zeta(" + std::to_string(level_) + ")";
      if (k > 1) unit += "^" + std::to_string(k);
    }
    if (k == 0) {
      os << c.get_str();
    } else if (c == 1) {
      os << unit;
    } else {
      os << c.get_str() << "*" << unit;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace pexp::field
