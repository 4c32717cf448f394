#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pseudoexp/field/frame.hpp"
#include "pseudoexp/field/involution.hpp"
#include "pseudoexp/field/reembed.hpp"
#include "pseudoexp/field/relations.hpp"
#include "pseudoexp/intmat/gpoint.hpp"

namespace pexp::varieties {

using field::Polynomial;
using field::RatExpr;
using field::Symbol;
using intmat::GPoint;
using intmat::IntMat;

/// Irreducible subvariety of G^n given as the closure of the image of a
/// rational map from a parameter space. Symbols in the maps that are not
/// parameters are constants of the base field.
struct ParamVariety {
  std::string name;
  std::vector<Symbol> params;
  std::vector<RatExpr> additive;
  std::vector<RatExpr> multiplicative;
  /// Optional polynomials in the coordinates z1..zn, w1..wn vanishing on V.
  std::vector<Polynomial> equations;
  std::vector<std::string> provenance;

  std::size_t n() const noexcept { return additive.size(); }
  GPoint generic_point() const { return GPoint(additive, multiplicative); }
  /// Maps after a substitution of the parameters.
  GPoint point_at(const std::map<Symbol, RatExpr>& values) const;
};

/// Text form of a variety, as found in variety files.
struct VarietySpec {
  std::string name;
  std::size_t n = 0;
  std::vector<std::string> params;
  std::vector<std::string> additive;
  std::vector<std::string> multiplicative;
  std::vector<std::string> equations;
};

/// Coordinate indeterminate z_j (additive) or w_j, 1-based.
Symbol coordinate(bool additive, std::size_t j);

/// Validates and builds a variety. Throws DimensionError on arity mismatch,
/// MathError on a zero multiplicative coordinate or an equation that does
/// not vanish on the parametrization, ParseError on bad names.
ParamVariety make_variety(std::string name, std::vector<Symbol> params, std::vector<RatExpr> additive,
                          std::vector<RatExpr> multiplicative, std::vector<Polynomial> equations = {});
ParamVariety make_variety(const VarietySpec& spec);

/// Substitutes the parametrization into every equation; true when all vanish.
bool equations_hold(const ParamVariety& v);

std::size_t dim(const ParamVariety& v);
long depth(const ParamVariety& v);

ParamVariety push(const IntMat& M, const ParamVariety& v);
/// V shifted by the group law: maps (z + p.z, w * p.w).
ParamVariety translate(const ParamVariety& v, const GPoint& p);

/// dim M.V for many integer matrices M (k x n) of the same variety, via one
/// frame of differential rows [dz; dlog w].
class PushDimension {
 public:
  explicit PushDimension(const ParamVariety& v);
  std::size_t operator()(const IntMat& M) const;
  std::size_t dim() const noexcept { return frame_.rank(); }

 private:
  std::size_t n_;
  field::RowFrame frame_;
};

/// A parameter substitution psi with V(psi) = W's maps, found by solving
/// for V's parameters from coordinates linear in them, or nullopt.
std::optional<std::map<Symbol, RatExpr>> reparametrization(const ParamVariety& v, const ParamVariety& w);
/// W = V as varieties: same arity and dimension, and W's generic point lies
/// on V through an explicit reparametrization.
bool same_variety(const ParamVariety& v, const ParamVariety& w);

// ---------------------------------------------------------------------------
// Classification

enum class Status { Exact, HoldsUpToBound, Fails };

const char* to_string(Status s);

struct Flag {
  Status status = Status::Exact;
  std::optional<IntMat> witness;  // failing matrix or relation vector
  std::optional<std::size_t> witness_dim;
  std::string detail;

  bool holds() const noexcept { return status != Status::Fails; }
};

struct EqualityCase {
  IntMat M;
  std::size_t rank = 0;  // = dim M.V
};

struct ClassificationReport {
  std::size_t n = 0;
  std::size_t dim = 0;
  long depth = 0;
  unsigned bound = 0;
  Flag rotund, abs_free, simple, perfectly_rotund;
  field::RelationLattice additive_relations;
  field::RelationLattice multiplicative_relations;
  /// Square n x n matrices (span representatives padded with zero rows).
  std::vector<EqualityCase> equality_matrices;
  std::size_t matrices_checked = 0;
};

/// Rotundity and simplicity are checked on every row-span representative
/// with entries in [-B, B]; absolute freeness is decided exactly.
ClassificationReport classify(const ParamVariety& v, unsigned bound = 3);

// ---------------------------------------------------------------------------
// Division and roots

/// W with q.W = V: push(q Id, W) equals V's maps after `substitution`, which
/// writes V's parameters in terms of W's.
struct Division {
  ParamVariety W;
  unsigned q = 1;
  std::map<Symbol, RatExpr> substitution;
  std::vector<long> twist;  // exponent of zeta_q on each multiplicative coordinate
};

/// The components of q^{-1}(V), up to the diagonal root-of-unity symmetries
/// of the parametrization. Throws UnsupportedError when a multiplicative
/// coordinate has no exact q-th root after reparametrization.
std::vector<Division> divide_with_receipts(const ParamVariety& v, unsigned q);
std::vector<ParamVariety> divide(const ParamVariety& v, unsigned q);
bool verify_division(const ParamVariety& v, const Division& d);
bool is_kummer_generic(const ParamVariety& v, unsigned q);

/// Key identifying a variety up to renaming its parameters in order.
std::string canonical_key(const ParamVariety& v);

/// All W with q.W = V for q <= q_max, deduplicated, smallest q first.
std::vector<Division> roots_system(const ParamVariety& v, unsigned q_max);

/// q.(M.W) = M.V, checked by exact substitution.
struct TransferCertificate {
  IntMat M;
  unsigned q = 1;
  ParamVariety MW;
  ParamVariety MV;
  bool holds = false;
};

TransferCertificate roots_transfer(const ParamVariety& v, const Division& d, const IntMat& M);

// ---------------------------------------------------------------------------
// Restriction of scalars

/// The G-restriction of V inside G^{2n}: coordinates (a, c) additive and
/// (b, d) multiplicative, parametrized by sigma-swapped pairs.
struct Realization {
  ParamVariety check;
  Division half;  // V' with 2.V' = V, params renamed to pairs[j].first
  std::vector<std::pair<Symbol, Symbol>> pairs;
  /// V's parameters in terms of the pair parameters: (a+c, b*d) = V(witness).
  std::map<Symbol, RatExpr> witness;
};

/// Extends `inv` with the fresh pairs. Every non-parameter symbol of V has to
/// be registered with `inv` already.
Realization realize(const ParamVariety& v, field::Involution& inv, field::NameSupply& names);

struct RealizationCheck {
  bool witness = false;  // (a+c, b*d) equals V at the witness parameters
  bool sigma = false;    // sigma a = a, sigma b = b, sigma c = -c, sigma d = 1/d
};

RealizationCheck verify_realization(const ParamVariety& v, const Realization& r, const field::Involution& inv);

struct RestrictionCase {
  IntMat M;  // p x 2n
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::string shape;  // "full", "N|P", "k|k", "k|-k" or "violation"
};

struct RestrictionReport {
  unsigned bound = 0;
  ClassificationReport input;
  Realization realization;
  std::size_t check_dim = 0;
  Flag check_abs_free;
  Flag check_rotund;
  std::vector<RestrictionCase> equality_cases;
  std::vector<RestrictionCase> counterexamples;
  std::size_t matrices_checked = 0;

  bool holds() const { return check_abs_free.holds() && check_rotund.holds() && counterexamples.empty(); }
};

/// Realizes V and examines every span representative M of M_{p,2n}(Z),
/// 0 < p <= 2n, within the bound. Throws MathError when V is not simple
/// within the bound (absolute freeness included).
RestrictionReport restriction_theorem_check(const ParamVariety& v, unsigned bound, field::Involution inv,
                                            field::NameSupply& names);

}  // namespace pexp::varieties
