#include "pseudoexp/field/relations.hpp"

#include <map>
#include <tuple>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/field/transcendence.hpp"

namespace pexp::field {

using intmat::IntMat;

const char* to_string(ConstantKind k) {
  switch (k) {
    case ConstantKind::One:
      return "one";
    case ConstantKind::RootOfUnity:
      return "root_of_unity";
    case ConstantKind::Other:
      return "other";
  }
  return "other";
}

namespace {

struct MonomialLess {
  bool operator()(const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return compare(a.second, b.second) < 0;
  }
};

// Rows of Q-coordinates of blocks of polynomials, in the basis
// (block, monomial, zeta_L^k); every column scaled to integers. Column scaling
// leaves the left kernel unchanged.
IntMat coordinate_matrix(const std::vector<std::vector<Polynomial>>& rows) {
  unsigned level = 1;
  for (const auto& r : rows)
    for (const auto& p : r) level = lcm_level(level, p.common_level());
  const unsigned width = level == 1 ? 1 : euler_phi(level);
  std::map<std::pair<std::size_t, Monomial>, std::size_t, MonomialLess> keys;
  for (const auto& r : rows)
    for (std::size_t b = 0; b < r.size(); ++b)
      for (const auto& t : r[b].terms()) keys.emplace(std::make_pair(b, t.monomial), 0);
  std::size_t col = 0;
  for (auto& [k, v] : keys) v = col++;
  std::vector<std::vector<Rational>> q(rows.size(), std::vector<Rational>(col * width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t b = 0; b < rows[i].size(); ++b)
      for (const auto& t : rows[i][b].terms()) {
        const std::size_t base = keys.at({b, t.monomial}) * width;
        const Scalar c = level == 1 ? t.coeff : t.coeff.lifted(level);
        const auto& co = c.coefficients();
        for (std::size_t k = 0; k < co.size() && k < width; ++k) q[i][base + k] = co[k];
      }
  IntMat m(rows.size(), col * width);
  for (std::size_t j = 0; j < col * width; ++j) {
    Integer l = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) l = lcm(l, Integer(q[i][j].get_den()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational v = q[i][j] * l;
      m(i, j) = v.get_num();
    }
  }
  return m;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return std::move(*q);
}

RelationNote classify_constant(RatExpr c) {
  RelationNote note;
  if (c.is_constant()) {
    const Scalar s = c.constant_value();
    if (s.is_one()) {
      note.kind = ConstantKind::One;
      note.order = 1;
    } else if (auto ord = s.root_of_unity_order()) {
      note.kind = ConstantKind::RootOfUnity;
      note.order = *ord;
    }
  }
  note.constant = std::move(c);
  return note;
}

}  // namespace

RelationLattice q_linear_relations(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt_in) {
  const std::vector<Symbol> wrt = wrt_in.empty() ? variables_of(fs) : wrt_in;
  RelationLattice out;
  if (fs.empty()) {
    out.generators = IntMat(0, 0);
    return out;
  }
  // d f_j / dx = P_jx / d_j^2; common denominator D^2 with D = lcm(d_j).
  Polynomial D(1);
  for (const auto& f : fs) D = lcm(D, f.den());
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& f : fs) {
    const Polynomial scale = divide_exact(D, f.den());
    const Polynomial scale2 = scale * scale;
    std::vector<Polynomial> row = jacobian_row(f, wrt);
    for (auto& p : row) p *= scale2;
    rows.push_back(std::move(row));
  }
  const IntMat A = coordinate_matrix(rows);
  out.generators = intmat::left_kernel(A);
  for (std::size_t r = 0; r < out.generators.rows(); ++r) {
    RatExpr c;
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (out.generators(r, j) != 0) c += RatExpr(Scalar(Rational(out.generators(r, j)))) * fs[j];
    out.notes.push_back(classify_constant(std::move(c)));
  }
  return out;
}

IntMat linear_relations(const std::vector<RatExpr>& fs) {
  if (fs.empty()) return IntMat(0, 0);
  Polynomial D(1);
  for (const auto& f : fs) D = lcm(D, f.den());
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& f : fs) rows.push_back({f.num() * divide_exact(D, f.den())});
  return intmat::left_kernel(coordinate_matrix(rows));
}

std::size_t linear_dimension(const std::vector<RatExpr>& fs) { return fs.size() - linear_relations(fs).rows(); }

std::optional<std::vector<Rational>> linear_coordinates(const std::vector<RatExpr>& basis, const RatExpr& x) {
  std::vector<Rational> coords(basis.size());
  if (x.is_zero()) return coords;
  std::vector<RatExpr> all = basis;
  all.push_back(x);
  const IntMat K = linear_relations(all);
  for (std::size_t r = 0; r < K.rows(); ++r) {
    const Integer& cx = K(r, basis.size());
    if (cx == 0) continue;
    for (std::size_t j = 0; j < basis.size(); ++j) coords[j] = Rational(-K(r, j), cx);
    for (auto& c : coords) c.canonicalize();
    return coords;
  }
  return std::nullopt;
}

std::vector<Polynomial> coprime_base(const std::vector<Polynomial>& ps) {
  std::vector<Polynomial> base;
  std::vector<Polynomial> work;
  for (const auto& p : ps)
    if (!p.is_constant()) work.push_back(p.monic());
  while (!work.empty()) {
    Polynomial q = std::move(work.back());
    work.pop_back();
    if (q.is_constant()) continue;
    bool split = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i] == q) {
        split = true;
        break;
      }
      const Polynomial g = gcd(q, base[i]);
      if (g.is_constant()) continue;
      Polynomial b = std::move(base[i]);
      base.erase(base.begin() + static_cast<long>(i));
      work.push_back(divide_exact(b, g).monic());
      work.push_back(divide_exact(q, g).monic());
      work.push_back(g);
      split = true;
      break;
    }
    if (!split) base.push_back(std::move(q));
  }
  std::sort(base.begin(), base.end(), [](const Polynomial& a, const Polynomial& b) {
    const int c = compare(a.leading_term().monomial, b.leading_term().monomial);
    if (c != 0) return c < 0;
    return a.to_string() < b.to_string();
  });
  return base;
}

RelationLattice mult_relations(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt_in) {
  for (const auto& f : fs)
    if (f.is_zero()) throw MathError("multiplicative relations of a tuple containing zero");
  const std::vector<Symbol> wrt = wrt_in.empty() ? variables_of(fs) : wrt_in;
  RelationLattice out;
  if (fs.empty()) {
    out.generators = IntMat(0, 0);
    return out;
  }
  auto primitive = [&](const Polynomial& p) {
    if (p.is_constant()) return Polynomial(1);
    bool touches = false;
    for (Symbol s : wrt)
      if (p.contains(s)) touches = true;
    if (!touches) return Polynomial(1);
    return divide_exact(p, content_wrt(p, wrt));
  };
  std::vector<std::pair<Polynomial, Polynomial>> prims;
  std::vector<Polynomial> all;
  for (const auto& f : fs) {
    prims.emplace_back(primitive(f.num()), primitive(f.den()));
    all.push_back(prims.back().first);
    all.push_back(prims.back().second);
  }
  const std::vector<Polynomial> base = coprime_base(all);
  IntMat E(fs.size(), base.size());
  auto multiplicity = [](Polynomial p, const Polynomial& b) {
    long e = 0;
    while (!p.is_constant()) {
      auto q = exact_divide(p, b);
      if (!q) break;
      p = std::move(*q);
      ++e;
    }
    return e;
  };
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (std::size_t b = 0; b < base.size(); ++b)
      E(j, b) = multiplicity(prims[j].first, base[b]) - multiplicity(prims[j].second, base[b]);
  out.generators = base.empty() ? IntMat::identity(fs.size()) : intmat::left_kernel(E);
  for (std::size_t r = 0; r < out.generators.rows(); ++r) {
    RatExpr pos(1), neg(1);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const Integer& m = out.generators(r, j);
      if (m == 0) continue;
      if (m > 0)
        pos *= fs[j].pow(m.get_si());
      else
        neg *= fs[j].pow(-m.get_si());
    }
    out.notes.push_back(classify_constant(pos / neg));
  }
  return out;
}

}  // namespace pexp::field
