#include <doctest.h>

#include "pseudoexp/field/scalar.hpp"
#include "support.hpp"

using pexp::field::cyclotomic_polynomial;
using pexp::field::Integer;
using pexp::field::Rational;
using pexp::field::Scalar;

namespace {

// x^n - 1 = prod_{d | n} Phi_d(x), multiplied out independently of the
// library's own construction.
std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

TEST_CASE("cyclotomic polynomials multiply to x^n - 1") {
  for (unsigned n = 1; n <= 30; ++n) {
    std::vector<Integer> prod{1};
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod = multiply(prod, cyclotomic_polynomial(d));
    std::vector<Integer> expect(n + 1, 0);
    expect[0] = -1;
    expect[n] = 1;
    CHECK(prod == expect);
  }
  CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
}

TEST_CASE("zeta is a primitive root of unity") {
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u, 15u}) {
    const Scalar z = Scalar::zeta(n);
    CHECK(z.pow(n).is_one());
    for (unsigned k = 1; k < n; ++k) CHECK_FALSE(z.pow(k).is_one());
    CHECK(*z.root_of_unity_order() == n);
  }
  CHECK(Scalar::zeta(2) == Scalar(-1));
  CHECK(Scalar::imaginary_unit() * Scalar::imaginary_unit() == Scalar(-1));
}

TEST_CASE("coherent embedding of levels") {
  // zeta_(pq)^p = zeta_q
  CHECK(Scalar::zeta(12).pow(3) == Scalar::zeta(4));
  CHECK(Scalar::zeta(12).pow(4) == Scalar::zeta(3));
  CHECK(Scalar::zeta(8).pow(2) == Scalar::imaginary_unit());
  CHECK(Scalar::zeta(3).lifted(6) == Scalar::zeta(3));
}

TEST_CASE("conjugation, inverse and lifting properties") {
  testing::Gen g(11);
  for (int k = 0; k < 300; ++k) {
    const Scalar a = g.scalar(), b = g.scalar();
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a + b).conj() == a.conj() + b.conj());
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    const unsigned m = pexp::field::lcm_level(pexp::field::lcm_level(a.level(), b.level()), 7);
    CHECK((a.lifted(m) * b.lifted(m)) == a * b);
    CHECK((a.lifted(m) + b.lifted(m)) == a + b);
  }
  CHECK(Scalar::imaginary_unit().conj() == -Scalar::imaginary_unit());
}

TEST_CASE("exact roots") {
  CHECK(*Scalar(Rational(4, 9)).exact_root(2) == Scalar(Rational(2, 3)));
  CHECK(!Scalar(2).exact_root(2).has_value());
  const Scalar r = *Scalar(-8).exact_root(3);
  CHECK(r.pow(3) == Scalar(-8));
  const Scalar w = *Scalar::zeta(5, 2).exact_root(4);
  CHECK(w.pow(4) == Scalar::zeta(5, 2));
  CHECK(*Scalar(1).exact_root(7) == Scalar(1));
}

TEST_CASE("printing") {
  CHECK(Scalar(Rational(-3, 4)).to_string() == "-3/4");
  CHECK((Scalar(3) + Scalar(4) * Scalar::imaginary_unit()).to_string() == "3 + 4*i");
  CHECK(Scalar::zeta(5, 2).to_string() == "zeta(5)^2");
  CHECK((-Scalar::imaginary_unit()).to_string() == "-i");
}
