#include "pseudoexp/field/transcendence.hpp"

#include <algorithm>
#include <set>

#include "pseudoexp/field/modular.hpp"

namespace pexp::field {

std::size_t bareiss_rank(PolyMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  Polynomial prev(1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    // Prefer the sparsest nonzero pivot to keep intermediate entries small.
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      if (piv == rows || m[r][c].terms().size() < m[piv][c].terms().size()) piv = r;
    }
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const Polynomial& p = m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Polynomial v = p * m[r][j] - m[r][c] * m[rank][j];
        if (!prev.is_constant() || !prev.constant_value().is_one()) {
          auto q = exact_divide(v, prev);
          if (!q) throw std::logic_error("Bareiss step is not exact");
          v = std::move(*q);
        }
        m[r][j] = std::move(v);
      }
      m[r][c] = Polynomial();
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t polynomial_matrix_rank(const PolyMatrix& m, std::uint64_t seed) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  // Drop zero rows and columns.
  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t r = 0; r < m.size(); ++r)
    if (std::any_of(m[r].begin(), m[r].end(), [](const Polynomial& p) { return !p.is_zero(); })) live_rows.push_back(r);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r : live_rows)
      if (!m[r][c].is_zero()) {
        live_cols.push_back(c);
        break;
      }
  const std::size_t upper = std::min(live_rows.size(), live_cols.size());
  if (upper == 0) return 0;
  PolyMatrix sub(live_rows.size(), std::vector<Polynomial>(live_cols.size()));
  unsigned level = 1;
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (std::size_t j = 0; j < live_cols.size(); ++j) {
      sub[i][j] = m[live_rows[i]][live_cols[j]];
      level = lcm_level(level, sub[i][j].common_level());
    }
  if (upper == 1) return 1;

  ModularEvaluator ev(level, seed);
  std::vector<std::vector<std::uint64_t>> mm(sub.size(), std::vector<std::uint64_t>(live_cols.size()));
  bool ok = true;
  for (std::size_t i = 0; i < sub.size() && ok; ++i)
    for (std::size_t j = 0; j < live_cols.size() && ok; ++j) {
      auto v = ev.eval(sub[i][j]);
      if (!v) ok = false;
      else mm[i][j] = *v;
    }
  if (ok && rank_mod_p(std::move(mm), ev) == upper) return upper;
  return bareiss_rank(std::move(sub));
}

std::vector<Polynomial> jacobian_row(const RatExpr& f, const std::vector<Symbol>& wrt) {
  std::vector<Polynomial> row;
  row.reserve(wrt.size());
  const bool poly = f.den().is_constant();
  for (Symbol x : wrt) {
    if (!f.contains(x)) {
      row.emplace_back();
    } else if (poly) {
      row.push_back(f.num().derivative(x));
    } else {
      row.push_back(f.num().derivative(x) * f.den() - f.num() * f.den().derivative(x));
    }
  }
  return row;
}

std::size_t jacobian_rank(const std::vector<RatExpr>& fs, const std::vector<Symbol>& wrt) {
  PolyMatrix m;
  m.reserve(fs.size());
  for (const auto& f : fs) m.push_back(jacobian_row(f, wrt));
  return polynomial_matrix_rank(m);
}

std::vector<Symbol> variables_of(const std::vector<RatExpr>& fs) {
  std::set<Symbol> vars;
  for (const auto& f : fs)
    for (Symbol s : f.variables()) vars.insert(s);
  return {vars.begin(), vars.end()};
}

std::size_t tr_deg(const std::vector<RatExpr>& fs, const std::vector<RatExpr>& over, const std::vector<Symbol>& wrt) {
  std::vector<RatExpr> all = fs;
  all.insert(all.end(), over.begin(), over.end());
  const std::vector<Symbol> vars = wrt.empty() ? variables_of(all) : wrt;
  const std::size_t total = jacobian_rank(all, vars);
  const std::size_t base = over.empty() ? 0 : jacobian_rank(over, vars);
  return total - base;
}

}  // namespace pexp::field
