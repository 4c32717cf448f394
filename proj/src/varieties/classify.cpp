#include "pseudoexp/errors.hpp"
#include "pseudoexp/intmat/lemmas.hpp"
#include "pseudoexp/varieties/variety.hpp"

namespace pexp::varieties {

const char* to_string(Status s) {
  switch (s) {
    case Status::Exact:
      return "exact";
    case Status::HoldsUpToBound:
      return "holds-up-to-bound";
    case Status::Fails:
      return "fails";
  }
  return "?";
}

namespace {

IntMat pad_square(const IntMat& M) { return IntMat::stack(M, IntMat(M.cols() - M.rows(), M.cols())); }

IntMat first_row(const IntMat& m) { return m.row_block(0, 1); }

}  // namespace

ClassificationReport classify(const ParamVariety& v, unsigned bound) {
  if (bound == 0) throw MathError("classification bound must be at least 1");
  const std::size_t n = v.n();
  const PushDimension dims(v);
  ClassificationReport r;
  r.n = n;
  r.dim = dims.dim();
  r.depth = static_cast<long>(r.dim) - static_cast<long>(n);
  r.bound = bound;

  // Absolute freeness: both relation lattices empty. Without parameters
  // every coordinate is constant.
  if (v.params.empty()) {
    r.additive_relations.generators = IntMat::identity(n);
    r.multiplicative_relations.generators = IntMat::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
      r.additive_relations.notes.push_back({v.additive[j], field::ConstantKind::Other, 0});
      r.multiplicative_relations.notes.push_back({v.multiplicative[j], field::ConstantKind::Other, 0});
    }
  } else {
    r.additive_relations = field::q_linear_relations(v.additive, v.params);
    r.multiplicative_relations = field::mult_relations(v.multiplicative, v.params);
  }
  if (!r.additive_relations.empty()) {
    r.abs_free = {Status::Fails, first_row(r.additive_relations.generators), std::nullopt,
                  "additive relation, constant " + r.additive_relations.notes[0].constant.to_string()};
  } else if (!r.multiplicative_relations.empty()) {
    r.abs_free = {Status::Fails, first_row(r.multiplicative_relations.generators), std::nullopt,
                  "multiplicative relation, constant " + r.multiplicative_relations.notes[0].constant.to_string()};
  }

  std::optional<std::pair<IntMat, std::size_t>> not_rotund, not_simple;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const IntMat& M : intmat::enumerate_row_spans(k, n, bound)) {
      const std::size_t d = dims(M);
      ++r.matrices_checked;
      if (d < k && !not_rotund) not_rotund.emplace(pad_square(M), d);
      if (d == k) {
        r.equality_matrices.push_back({pad_square(M), k});
        if (k < n && !not_simple) not_simple.emplace(pad_square(M), d);
      }
    }
  }
  // With n = 1 every nonzero matrix spans the same line, so the bound loses nothing.
  const Status held = n == 1 ? Status::Exact : Status::HoldsUpToBound;
  if (not_rotund) {
    r.rotund = {Status::Fails, not_rotund->first, not_rotund->second, "dim M.V < rank M"};
  } else {
    r.rotund.status = held;
  }

  if (!r.abs_free.holds()) {
    r.simple = {Status::Fails, r.abs_free.witness, std::nullopt, "not absolutely free"};
  } else if (!r.rotund.holds()) {
    r.simple = r.rotund;
    r.simple.detail = "not rotund";
  } else if (not_simple) {
    r.simple = {Status::Fails, not_simple->first, not_simple->second, "dim M.V = rank M < n"};
  } else {
    r.simple.status = held;
  }

  if (!r.simple.holds()) {
    r.perfectly_rotund = r.simple;
    r.perfectly_rotund.detail = "not simple: " + r.simple.detail;
  } else if (r.depth != 0) {
    r.perfectly_rotund = {Status::Fails, std::nullopt, std::nullopt, "depth " + std::to_string(r.depth)};
  } else {
    r.perfectly_rotund.status = r.simple.status;
  }
  return r;
}

}  // namespace pexp::varieties
