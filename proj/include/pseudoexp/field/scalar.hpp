#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace pexp::field {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer coefficients of the cyclotomic polynomial Phi_n, lowest degree
/// first. Cached process-wide.
const std::vector<Integer>& cyclotomic_polynomial(unsigned n);

unsigned euler_phi(unsigned n);
unsigned lcm_level(unsigned a, unsigned b);

/// Element of the cyclotomic field Q(zeta_N), stored as a polynomial in
/// zeta_N of degree < phi(N). Elements of Q are kept at level 1.
///
/// zeta_N is the coherent choice exp(2 pi i / N): embedding level N into a
/// level M with N | M sends zeta_N to zeta_M^(M/N), so zeta_(pq)^p = zeta_q.
/// Complex conjugation acts by zeta_N -> zeta_N^(-1).
class Scalar {
 public:
  Scalar() : level_(1), coeffs_{Rational(0)} {}
  Scalar(long v) : level_(1), coeffs_{Rational(v)} {}  // NOLINT
  Scalar(const Rational& q) : level_(1), coeffs_{q} {}  // NOLINT
  Scalar(const Integer& z) : level_(1), coeffs_{Rational(z)} {}  // NOLINT

  /// Builds a scalar from raw coefficients at `level`; reduces modulo Phi_level.
  static Scalar from_coefficients(unsigned level, std::vector<Rational> coeffs);
  /// zeta_n^k, k taken modulo n.
  static Scalar zeta(unsigned n, long k = 1);
  /// The square root of -1, zeta_4.
  static Scalar imaginary_unit() { return zeta(4); }

  unsigned level() const noexcept { return level_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const noexcept { return level_ == 1; }
  /// Value as a rational; only valid when is_rational().
  const Rational& rational() const;

  /// Same element written at level `m` (requires level() | m).
  Scalar lifted(unsigned m) const;

  Scalar conj() const;
  Scalar inverse() const;
  Scalar pow(long e) const;

  /// Multiplicative order if this is a root of unity.
  std::optional<unsigned long> root_of_unity_order() const;
  /// k with *this == zeta_n^k for the given n, if any.
  std::optional<unsigned long> discrete_log(unsigned n) const;
  /// An exact q-th root in some cyclotomic field, when one is found:
  /// roots of unity always, rationals when |x| is a perfect q-th power.
  std::optional<Scalar> exact_root(unsigned q) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Parseable text: rationals as p or p/q, level 4 with `i`, otherwise
  /// sums of c*zeta(N)^k.
  std::string to_string() const;
  /// True when to_string() needs parentheses as a factor.
  bool is_compound() const;

 private:
  Scalar(unsigned level, std::vector<Rational> coeffs)
      : level_(level), coeffs_(std::move(coeffs)) {}
  void normalize();

  unsigned level_;
  std::vector<Rational> coeffs_;
};

}  // namespace pexp::field
