#include <doctest.h>

#include <numeric>
#include <set>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/intmat/gpoint.hpp"
#include "pseudoexp/intmat/lemmas.hpp"
#include "support.hpp"

using namespace pexp::intmat;
using pexp::field::Integer;
using pexp::field::Rational;
using testing::Gen;
using testing::parse;

namespace {

// Rank by plain Gauss-Jordan over Q, independent of the library's Bareiss.
std::size_t rational_rank(const IntMat& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rational(m(i, j));
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::size_t p = r;
    while (p < m.rows() && a[p][j] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][j] == 0) continue;
      Rational f = a[i][j] / a[r][j];
      for (std::size_t c = j; c < m.cols(); ++c) a[i][c] -= f * a[r][c];
    }
    ++r;
  }
  return r;
}

bool same_span(const IntMat& a, const IntMat& b) {
  const std::size_t ra = rational_rank(a);
  return ra == rational_rank(b) && rational_rank(IntMat::stack(a, b)) == ra;
}

// Row span of `sub` inside row span of `big`.
bool span_contains(const IntMat& big, const IntMat& sub) {
  if (sub.rows() == 0) return true;
  return rational_rank(IntMat::stack(big, sub)) == rational_rank(big);
}

IntMat full_row_rank(Gen& g, std::size_t r, std::size_t c, long bound) {
  while (true) {
    IntMat m = g.matrix(r, c, bound);
    if (rational_rank(m) == r) return m;
  }
}

// Small entries: the action raises them to powers of matrix entries.
GPoint random_point(Gen& g, std::size_t n) {
  static const char* additive[] = {"x", "y+1", "x*y", "1/2", "x-y", "i*x"};
  static const char* multiplicative[] = {"x", "y", "x+1", "2*y", "x/y", "-1", "i"};
  std::vector<pexp::field::RatExpr> z, w;
  for (std::size_t j = 0; j < n; ++j) {
    z.push_back(parse(additive[g.integer(0, 5)]));
    w.push_back(parse(multiplicative[g.integer(0, 6)]));
  }
  return GPoint(z, w);
}

}  // namespace

TEST_CASE("hermite and smith forms") {
  const IntMat swap{{0, 1}, {1, 0}};
  CHECK(hnf(swap).H == IntMat::identity(2));

  Gen g(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = g.integer(1, 4), c = g.integer(1, 4);
    const IntMat m = g.matrix(r, c, 5);
    const auto h = hnf(m);
    CHECK(h.U * m == h.H);
    CHECK(abs(det(h.U)) == 1);
    CHECK(h.rank == rational_rank(m));
    CHECK(rank(m) == rational_rank(m));
    for (std::size_t i = h.rank; i < r; ++i) CHECK(h.H.row(i) == IntMat(1, c).row(0));

    const auto s = snf(m);
    CHECK(s.U * m * s.V == s.S);
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.S(i, j) == 0);
    for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
      if (s.S(i + 1, i + 1) != 0) CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
    }
  }
}

TEST_CASE("companion matrix") {
  const auto c = companion(IntMat{{2, 0}, {0, 3}});
  CHECK(c.adjoint == IntMat({{3, 0}, {0, 2}}));
  CHECK(c.d == 6);
  const auto id = companion(IntMat::identity(3));
  CHECK(id.adjoint == IntMat::identity(3));
  CHECK(id.d == 1);
  CHECK_THROWS_AS(companion(IntMat{{1, 2}, {2, 4}}), pexp::MathError);

  Gen g(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = g.integer(1, 3);
    const IntMat m = full_row_rank(g, n, n, 4);
    const auto cm = companion(m);
    CHECK(cm.d == abs(det(m)));
    CHECK(cm.adjoint * m == IntMat::scalar(n, cm.d));
    if (n <= 2 && cm.d <= 12) {
      const GPoint p = random_point(g, n);
      CHECK(act(cm.adjoint, act(m, p)) == act(IntMat::scalar(n, cm.d), p));
    }
  }
}

TEST_CASE("kernels and saturation") {
  Gen g(13);
  for (int t = 0; t < 50; ++t) {
    const IntMat m = g.matrix(g.integer(1, 4), g.integer(1, 4), 4);
    const IntMat lk = left_kernel(m);
    const IntMat rk = right_kernel(m);
    CHECK(lk.rows() == m.rows() - rational_rank(m));
    CHECK(rk.rows() == m.cols() - rational_rank(m));
    if (lk.rows()) CHECK((lk * m).is_zero());
    if (rk.rows()) CHECK((m * rk.transpose()).is_zero());
    const IntMat s = saturate(m);
    CHECK(same_span(s, m));
    // Saturated: the Smith invariants of a saturated basis are all 1.
    if (s.rows()) {
      const auto f = snf(s);
      for (std::size_t i = 0; i < s.rows(); ++i) CHECK(abs(f.S(i, i)) == 1);
    }
  }
}

TEST_CASE("decompose_block examples") {
  auto d = decompose_block(IntMat{{1, 0}}, IntMat{{0, 1}});
  CHECK(d.P1.rows() == 0);
  CHECK(d.N0 == IntMat({{1, 0}}));
  CHECK(d.P0 == IntMat({{0, 1}}));
  CHECK(d.A == IntMat::identity(2));

  d = decompose_block(IntMat{{1, 1}}, IntMat{{1, 1}});
  CHECK(d.P1 == IntMat({{1, 1}}));
  CHECK(d.N0.rows() == 0);
  CHECK(d.P0.rows() == 0);
  const IntMat lhs = d.A * IntMat::block_diag(IntMat{{1, 1}}, IntMat{{1, 1}});
  CHECK(lhs == IntMat::block_diag(d.P1, d.P1));

  CHECK_THROWS_AS(decompose_block(IntMat{{1, 1}, {2, 2}}, IntMat{{1, 0}}), pexp::MathError);
}

TEST_CASE("decompose_block on random pairs") {
  Gen g(14);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = g.integer(1, 3);
    const std::size_t k = g.integer(1, n), l = g.integer(1, n);
    const IntMat N = full_row_rank(g, k, n, 5);
    const IntMat P = full_row_rank(g, l, n, 5);
    const auto d = decompose_block(N, P);
    CHECK(rational_rank(d.A) == k + l);
    const IntMat rhs = IntMat::block_diag(IntMat::stack(d.N0, d.P1), IntMat::stack(d.P0, d.P1));
    CHECK(d.A * IntMat::block_diag(N, P) == rhs);
    const IntMat all = IntMat::stack(IntMat::stack(d.N0, d.P0), d.P1);
    CHECK(rational_rank(all) == all.rows());
    // rowspan(P1) = rowspan(N) cap rowspan(P): dimension by Grassmann, containment both ways.
    const std::size_t inter = k + l - rational_rank(IntMat::stack(N, P));
    CHECK(d.P1.rows() == inter);
    CHECK(span_contains(N, d.P1));
    CHECK(span_contains(P, d.P1));
  }
}

TEST_CASE("reduce_general") {
  auto r = reduce_general(IntMat::hcat(IntMat::identity(2), IntMat(2, 2)));
  CHECK(r.k == 2);
  CHECK(r.l == 0);
  CHECK(r.m == 0);
  CHECK(r.A == IntMat::identity(2));
  r = reduce_general(IntMat::hcat(IntMat::identity(2), IntMat::identity(2)));
  CHECK(r.k == 0);
  CHECK(r.l == 0);
  CHECK(r.m == 2);
  CHECK_THROWS_AS(reduce_general(IntMat(1, 2)), pexp::MathError);
  CHECK_THROWS_AS(reduce_general(IntMat{{1, 2, 3}}), pexp::Error);

  Gen g(15);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = g.integer(1, 3);
    const std::size_t p = g.integer(1, 2 * n);
    const IntMat M = full_row_rank(g, p, 2 * n, 5);
    const auto red = reduce_general(M);
    CHECK(rational_rank(red.A) == p);
    CHECK(red.k + red.l + red.m == p);
    const IntMat zk(red.k, n), zl(red.l, n);
    const IntMat top = IntMat::hcat(red.N0, zk);
    const IntMat mid = IntMat::hcat(red.N1, red.P1);
    const IntMat bot = IntMat::hcat(zl, red.P0);
    CHECK(red.A * M == IntMat::stack(IntMat::stack(top, mid), bot));
    CHECK(rational_rank(IntMat::stack(red.N0, red.N1)) == red.k + red.m);
    CHECK(rational_rank(IntMat::stack(red.P0, red.P1)) == red.m + red.l);
  }
}

TEST_CASE("row span enumeration") {
  const auto b1 = enumerate_row_spans(1, 2, 1);
  CHECK(b1.size() == 4);
  for (const IntMat& want : {IntMat{{1, 0}}, IntMat{{0, 1}}, IntMat{{1, 1}}, IntMat{{1, -1}}}) {
    CHECK(std::count_if(b1.begin(), b1.end(), [&](const IntMat& m) { return same_span(m, want); }) == 1);
  }
  CHECK(enumerate_row_spans(2, 2, 3) == std::vector<IntMat>{IntMat::identity(2)});
  CHECK(enumerate_row_spans(3, 3, 1) == std::vector<IntMat>{IntMat::identity(3)});

  // Brute-force: primitive direction up to sign of each nonzero row.
  for (unsigned B : {1u, 2u, 3u}) {
    std::set<std::pair<long, long>> dirs;
    for (long a = -static_cast<long>(B); a <= static_cast<long>(B); ++a)
      for (long b = -static_cast<long>(B); b <= static_cast<long>(B); ++b) {
        if (a == 0 && b == 0) continue;
        const long gg = std::gcd(a, b);
        long x = a / gg, y = b / gg;
        if (x < 0 || (x == 0 && y < 0)) x = -x, y = -y;
        dirs.emplace(x, y);
      }
    CHECK(enumerate_row_spans(1, 2, B).size() == dirs.size());
  }

  // Pairwise distinct spans, each saturated, for a 2 x 3 case.
  const auto spans = enumerate_row_spans(2, 3, 1);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    CHECK(saturate(spans[i]) == spans[i]);
    for (std::size_t j = i + 1; j < spans.size(); ++j) CHECK_FALSE(same_span(spans[i], spans[j]));
  }
  // Every 2 x 3 matrix with entries in [-1,1] of rank 2 hits one of them.
  Gen g(16);
  for (int t = 0; t < 80; ++t) {
    const IntMat m = full_row_rank(g, 2, 3, 1);
    CHECK(std::count_if(spans.begin(), spans.end(), [&](const IntMat& s) { return same_span(s, m); }) == 1);
  }
}

TEST_CASE("matrix action") {
  auto z = parse("z"), w = parse("w");
  GPoint p({z}, {w});
  CHECK(act(IntMat::scalar(1, 2), p) == GPoint({parse("2*z")}, {parse("w^2")}));
  GPoint p2({parse("z1"), parse("z2")}, {parse("w1"), parse("w2")});
  CHECK(act(IntMat{{1, 1}}, p2) == GPoint({parse("z1+z2")}, {parse("w1*w2")}));
  CHECK(act(IntMat{{-1, 2}}, p2) == GPoint({parse("2*z2-z1")}, {parse("w2^2/w1")}));
  CHECK_THROWS_AS(act(IntMat{{1, 1, 1}}, p2), pexp::DimensionError);
  CHECK_THROWS_AS(GPoint({z}, {RatExpr(0)}), pexp::MathError);

  Gen g(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = g.integer(1, 2), k = g.integer(1, 2), j = g.integer(1, 2);
    const IntMat M = g.matrix(k, n, 2), N = g.matrix(n, j, 2);
    const GPoint a = random_point(g, j);
    CHECK(act(M * N, a) == act(M, act(N, a)));
    const GPoint b = random_point(g, n), c = random_point(g, n);
    CHECK(act(M, b + c) == act(M, b) + act(M, c));
  }
}
