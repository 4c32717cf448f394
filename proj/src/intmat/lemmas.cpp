#include "pseudoexp/intmat/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>
#include <set>

#include "pseudoexp/errors.hpp"

namespace pexp::intmat {

namespace {

IntMat unit_row(std::size_t n, std::size_t i) {
  IntMat e(1, n);
  e(0, i) = 1;
  return e;
}

// Greedily extends `base` by rows of `candidates` (given as coefficient rows
// `coeffs`, with images candidates) that raise the rank of the images.
// Returns the indices taken.
std::vector<std::size_t> greedy_extend(const IntMat& base_image, const IntMat& candidates, std::size_t want) {
  std::vector<std::size_t> taken;
  IntMat acc = base_image;
  std::size_t r = rank(acc);
  for (std::size_t i = 0; i < candidates.rows() && taken.size() < want; ++i) {
    IntMat trial = IntMat::stack(acc, candidates.row_block(i, 1));
    const std::size_t tr = rank(trial);
    if (tr > r) {
      acc = std::move(trial);
      r = tr;
      taken.push_back(i);
    }
  }
  return taken;
}

}  // namespace

BlockDecomposition decompose_block(const IntMat& N, const IntMat& P) {
  if (N.cols() != P.cols() && N.rows() > 0 && P.rows() > 0) throw DimensionError("N and P must have the same number of columns");
  const std::size_t n = std::max(N.cols(), P.cols());
  const std::size_t k = N.rows(), l = P.rows();
  if (rank(N) != k || rank(P) != l) throw MathError("decompose_block requires matrices with independent rows");
  IntMat Nn = k ? N : IntMat(0, n);
  IntMat Pn = l ? P : IntMat(0, n);

  // (a, b') in the left kernel of [N; P]: a N = -b' P spans the intersection.
  const IntMat K = left_kernel(IntMat::stack(Nn, Pn));
  const std::size_t j = K.rows();
  IntMat a = K.col_block(0, k);
  IntMat b = -K.col_block(k, l);
  // First nonzero entry of each a row positive.
  for (std::size_t r = 0; r < j; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (a(r, c) == 0) continue;
      if (a(r, c) < 0) {
        for (std::size_t cc = 0; cc < k; ++cc) a(r, cc) = -a(r, cc);
        for (std::size_t cc = 0; cc < l; ++cc) b(r, cc) = -b(r, cc);
      }
      break;
    }
  }
  const IntMat P1 = j ? a * Nn : IntMat(0, n);

  const auto n_sel = greedy_extend(P1, Nn, k - j);
  const auto p_sel = greedy_extend(P1, Pn, l - j);
  if (n_sel.size() != k - j || p_sel.size() != l - j) throw std::logic_error("decompose_block: completion failed");

  IntMat A0(0, k), A1(0, l), N0(0, n), P0(0, n);
  for (std::size_t i : n_sel) {
    A0 = IntMat::stack(A0, unit_row(k, i));
    N0 = IntMat::stack(N0, Nn.row_block(i, 1));
  }
  for (std::size_t i : p_sel) {
    A1 = IntMat::stack(A1, unit_row(l, i));
    P0 = IntMat::stack(P0, Pn.row_block(i, 1));
  }
  if (j) {
    A0 = IntMat::stack(A0, a);
    A1 = IntMat::stack(A1, b);
  }
  return {IntMat::block_diag(A0, A1), N0, P0, P1};
}

GeneralReduction reduce_general(const IntMat& M) {
  if (M.cols() % 2 != 0) throw DimensionError("reduce_general expects p x 2n");
  if (M.rows() == 0 || M.is_zero()) throw MathError("reduce_general requires a nonzero matrix");
  const std::size_t p = M.rows(), n = M.cols() / 2;
  if (rank(M) != p) throw MathError("reduce_general requires full row rank");
  const IntMat L = M.col_block(0, n), R = M.col_block(n, n);

  const IntMat KR = left_kernel(R);  // rows killing the right half
  const IntMat KL = left_kernel(L);  // rows killing the left half
  const std::size_t k = KR.rows(), l = KL.rows();
  const std::size_t m = p - k - l;

  IntMat units(0, p);
  for (std::size_t i = 0; i < p; ++i) units = IntMat::stack(units, unit_row(p, i));
  const IntMat base = IntMat::stack(k ? KR : IntMat(0, p), l ? KL : IntMat(0, p));
  const auto sel = greedy_extend(base, units, m);
  if (sel.size() != m) throw std::logic_error("reduce_general: completion failed");
  IntMat E(0, p);
  for (std::size_t i : sel) E = IntMat::stack(E, unit_row(p, i));

  GeneralReduction out;
  out.A = IntMat::stack(IntMat::stack(k ? KR : IntMat(0, p), E), l ? KL : IntMat(0, p));
  const IntMat AM = out.A * M;
  out.N0 = AM.row_block(0, k).col_block(0, n);
  out.N1 = AM.row_block(k, m).col_block(0, n);
  out.P1 = AM.row_block(k, m).col_block(n, n);
  out.P0 = AM.row_block(k + m, l).col_block(n, n);
  out.k = k;
  out.l = l;
  out.m = m;
  return out;
}

namespace {

std::vector<IntVec> primitive_vectors(std::size_t c, unsigned B) {
  std::vector<IntVec> out;
  std::vector<long> v(c, -static_cast<long>(B));
  while (true) {
    // Keep vectors whose first nonzero entry is positive, with gcd 1.
    std::size_t f = 0;
    while (f < c && v[f] == 0) ++f;
    if (f < c && v[f] > 0) {
      long g = 0;
      for (long x : v) g = std::gcd(g, std::labs(x));
      if (g == 1) out.emplace_back(v.begin(), v.end());
    }
    std::size_t i = c;
    while (i > 0) {
      --i;
      if (v[i] < static_cast<long>(B)) {
        ++v[i];
        for (std::size_t j = i + 1; j < c; ++j) v[j] = -static_cast<long>(B);
        break;
      }
      if (i == 0) return out;
    }
    if (c == 0) return out;
  }
}

bool span_order(const IntMat& a, const IntMat& b) {
  const Integer ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  return b < a;
}

}  // namespace

std::vector<IntMat> enumerate_row_spans(std::size_t k, std::size_t c, unsigned B) {
  if (B < 1) throw MathError("enumerate_row_spans requires B >= 1");
  if (k == 0 || k > c) return {};
  if (k == c) return {IntMat::identity(c)};

  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, unsigned>, std::vector<IntMat>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({k, c, B}); it != cache.end()) return it->second;
  }

  const auto prim = primitive_vectors(c, B);
  std::set<IntMat> seen;
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == k) {
      std::vector<IntVec> rows;
      for (std::size_t i : idx) rows.push_back(prim[i]);
      IntMat m = IntMat::from_rows(rows, c);
      if (rank(m) != k) return;
      seen.insert(k == 1 ? m : saturate(m));
      return;
    }
    for (std::size_t i = start; i < prim.size(); ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  std::vector<IntMat> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), span_order);
  std::lock_guard lock(mu);
  cache.emplace(std::make_tuple(k, c, B), out);
  return out;
}

}  // namespace pexp::intmat

namespace pexp::intmat {

Checks verify_block(const IntMat& N, const IntMat& P, const BlockDecomposition& d) {
  const std::size_t k = N.rows(), l = P.rows();
  const IntMat rhs = IntMat::block_diag(IntMat::stack(d.N0, d.P1), IntMat::stack(d.P0, d.P1));
  const IntMat all = IntMat::stack(IntMat::stack(d.N0, d.P0), d.P1);
  const std::size_t inter = k + l - rank(IntMat::stack(N, P));
  return {{"A full rank", d.A.rows() == k + l && rank(d.A) == k + l},
          {"block equation", d.A * IntMat::block_diag(N, P) == rhs},
          {"N0;P0;P1 independent", rank(all) == all.rows()},
          {"rank P1 = dim of the intersection", d.P1.rows() == inter},
          {"P1 in rowspan N", rank(IntMat::stack(N, d.P1)) == rank(N)},
          {"P1 in rowspan P", rank(IntMat::stack(P, d.P1)) == rank(P)}};
}

Checks verify_reduction(const IntMat& M, const GeneralReduction& r) {
  const std::size_t p = M.rows(), n = M.cols() / 2;
  bool eq = r.A.rows() == p && r.k + r.l + r.m == p;
  if (eq) {
    const IntMat top = IntMat::hcat(r.N0, IntMat(r.k, n));
    const IntMat mid = IntMat::hcat(r.N1, r.P1);
    const IntMat bot = IntMat::hcat(IntMat(r.l, n), r.P0);
    eq = r.A * M == IntMat::stack(IntMat::stack(top, mid), bot);
  }
  return {{"A full rank", r.A.rows() == p && rank(r.A) == p},
          {"block equation", eq},
          {"N0;N1 full rank", rank(IntMat::stack(r.N0, r.N1)) == r.k + r.m},
          {"P0;P1 full rank", rank(IntMat::stack(r.P0, r.P1)) == r.m + r.l}};
}

}  // namespace pexp::intmat
