#include "pseudoexp/efield/audit.hpp"

#include "pseudoexp/errors.hpp"

namespace pexp::efield {

namespace {

field::PolyMatrix delta_rows(const EFieldState& s) {
  const auto wrt = s.indeterminates();
  field::PolyMatrix rows = field::additive_rows(s.elements(), wrt);
  field::PolyMatrix logs = field::logarithmic_rows(s.values(), wrt);
  rows.insert(rows.end(), logs.begin(), logs.end());
  return rows;
}

IntMat unit_rows(std::size_t m, std::size_t first, std::size_t count) {
  IntMat out(count, m);
  for (std::size_t i = 0; i < count; ++i) out(i, first + i) = 1;
  return out;
}

}  // namespace

DeltaOracle::DeltaOracle(const EFieldState& s) : m_(s.basis.size()), frame_(delta_rows(s)) {
  prefix_rank_.push_back(0);
  for (std::size_t p = 1; p <= m_; ++p) {
    const IntMat P = unit_rows(m_, 0, p);
    prefix_rank_.push_back(frame_.rank_of(IntMat::block_diag(P, P)));
  }
}

std::size_t DeltaOracle::rank_with_prefix(const IntMat& C, std::size_t prefix) const {
  const IntMat full = IntMat::stack(unit_rows(m_, 0, prefix), C);
  return frame_.rank_of(IntMat::block_diag(full, full));
}

std::size_t DeltaOracle::tr_deg(const IntMat& C, std::size_t prefix) const {
  if (C.cols() != m_) throw DimensionError("combination matrix has the wrong number of columns");
  if (prefix > m_) throw DimensionError("prefix longer than the basis");
  return rank_with_prefix(C, prefix) - prefix_rank_[prefix];
}

long DeltaOracle::delta(const IntMat& C, std::size_t prefix) const {
  const std::size_t td = tr_deg(C, prefix);
  // the basis is Q-independent, so lin.d is an integer rank
  const std::size_t lin = intmat::rank(IntMat::stack(unit_rows(m_, 0, prefix), C)) - prefix;
  return static_cast<long>(td) - static_cast<long>(lin);
}

KernelReport audit_kernel(const EFieldState& s) {
  KernelReport r;
  const std::size_t m = s.basis.size();
  r.expected = IntMat(1, m);
  r.expected(0, 0) = static_cast<long>(s.torsion);
  r.relations = field::mult_relations(s.values(), s.indeterminates());
  const auto K = unit_kernel(r.relations);
  if (!K) {
    r.ok = false;
    r.detail = "a constant product of values has undetermined order";
    return r;
  }
  r.kernel = *K;
  r.ok = r.kernel == intmat::row_basis(r.expected);
  if (!r.ok) r.detail = "kernel " + r.kernel.to_string() + " differs from " + r.expected.to_string();
  return r;
}

SigmaReport audit_sigma(const EFieldState& s) {
  SigmaReport r;
  for (std::size_t j = 0; j < s.basis.size(); ++j) {
    const BasisEntry& b = s.basis[j];
    SigmaEntry e{j, b.sigma, true, true};
    if (b.sigma == SigmaType::Real) {
      e.element = s.inv.apply(b.element) == b.element;
      e.value = s.inv.apply(b.value) == b.value;
    } else if (b.sigma == SigmaType::Imaginary) {
      e.element = s.inv.apply(b.element) == -b.element;
      e.value = s.inv.apply(b.value) * b.value == RatExpr(1);
    }
    r.ok = r.ok && e.element && e.value;
    r.entries.push_back(e);
  }
  return r;
}

namespace {

SPReport search(const DeltaOracle& oracle, long bound, std::size_t first) {
  SPReport r;
  const std::size_t m = oracle.size();
  if (first > m) throw DimensionError("search start beyond the basis");
  const std::size_t k = m - first;
  if (k == 0) return r;
  if (k > 20) throw UnsupportedError("too many basis elements for an exhaustive search");
  bool seen = false;
  auto visit = [&](const IntMat& C) {
    const long d = oracle.delta(C, first);
    ++r.family_size;
    if (!seen || d < r.minimum) {
      seen = true;
      r.minimum = d;
      r.argmin.clear();
      for (std::size_t i = 0; i < C.rows(); ++i)
        for (std::size_t j = 0; j < C.cols(); ++j) r.argmin.push_back(C(i, j).get_si());
    }
  };
  for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1ul << j)) idx.push_back(first + j);
    IntMat C(idx.size(), m);
    for (std::size_t i = 0; i < idx.size(); ++i) C(i, idx[i]) = 1;
    visit(C);
  }
  if (bound > 0) {
    std::vector<long> c(k, -bound);
    while (true) {
      bool nonzero = false;
      for (long x : c) nonzero = nonzero || x != 0;
      if (nonzero) {
        IntMat C(1, m);
        for (std::size_t j = 0; j < k; ++j) C(0, first + j) = c[j];
        visit(C);
      }
      std::size_t j = 0;
      while (j < k && c[j] == bound) c[j++] = -bound;
      if (j == k) break;
      ++c[j];
    }
  }
  r.ok = r.minimum >= 0;
  return r;
}

}  // namespace

SPReport audit_sp(const EFieldState& s, long coeff_bound, std::size_t first) {
  return search(DeltaOracle(s), coeff_bound, first);
}

AuditReport audit(const EFieldState& s) { return {audit_kernel(s), audit_sigma(s), audit_sp(s)}; }

StrongCertificate strong_certificate(const EFieldState& s, std::size_t old_size, std::string rule, bool rule_ok,
                                     std::string rule_detail) {
  StrongCertificate c;
  c.rule = std::move(rule);
  c.rule_ok = rule_ok;
  c.rule_detail = std::move(rule_detail);
  const std::size_t m = s.basis.size();
  if (old_size > m) throw DimensionError("old domain larger than the new one");
  const DeltaOracle oracle(s);
  const IntMat C = unit_rows(m, old_size, m - old_size);
  c.block.new_elements = m - old_size;
  c.block.lin_d = m - old_size;
  c.block.tr_deg = oracle.tr_deg(C, old_size);
  c.block.delta = static_cast<long>(c.block.tr_deg) - static_cast<long>(c.block.lin_d);
  c.search = search(oracle, 2, old_size);
  return c;
}

StrongCertificate is_strong_extension(const EFieldState& old, const EFieldState& now) {
  bool prefix = old.history.size() <= now.history.size() && old.basis.size() <= now.basis.size();
  for (std::size_t i = 0; prefix && i < old.history.size(); ++i) prefix = old.history[i] == now.history[i];
  if (!prefix) return strong_certificate(now, now.basis.size(), "prefix", false, "history is not a prefix");
  std::string rule;
  std::string detail;
  bool ok = true;
  for (std::size_t i = old.history.size(); i < now.history.size(); ++i) {
    const auto& h = now.history[i];
    const std::string op = h.value("op", "?");
    rule += (rule.empty() ? "" : ",") + op;
    if (h.contains("strong")) {
      const bool step_ok = h["strong"].value("ok", false);
      if (!step_ok) {
        ok = false;
        detail += "step " + std::to_string(i) + " (" + op + ") not certified; ";
      }
    }
  }
  return strong_certificate(now, old.basis.size(), rule.empty() ? "identity" : rule, ok, detail);
}

nlohmann::json to_json(const KernelReport& r) {
  return {{"kernel", r.kernel.to_string()},
          {"expected", r.expected.to_string()},
          {"relations", r.relations.generators.to_string()},
          {"ok", r.ok},
          {"detail", r.detail}};
}

nlohmann::json to_json(const SigmaReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"index", e.index}, {"type", to_string(e.type)}, {"element", e.element}, {"value", e.value}});
  return {{"entries", entries}, {"ok", r.ok}};
}

nlohmann::json to_json(const SPReport& r) {
  return {{"minimum", r.minimum}, {"argmin", r.argmin}, {"family_size", r.family_size}, {"ok", r.ok}};
}

nlohmann::json to_json(const DeltaReport& r) {
  return {{"new_elements", r.new_elements}, {"tr_deg", r.tr_deg}, {"lin_d", r.lin_d}, {"delta", r.delta}};
}

nlohmann::json to_json(const StrongCertificate& r) {
  return {{"rule", r.rule},
          {"rule_ok", r.rule_ok},
          {"rule_detail", r.rule_detail},
          {"block", to_json(r.block)},
          {"search", to_json(r.search)},
          {"ok", r.ok()}};
}

nlohmann::json to_json(const AuditReport& r) {
  return {{"kernel", to_json(r.kernel)}, {"sigma", to_json(r.sigma)}, {"sp", to_json(r.sp)}, {"ok", r.ok()}};
}

}  // namespace pexp::efield
