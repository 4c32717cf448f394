#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pseudoexp/field/involution.hpp"
#include "pseudoexp/field/reembed.hpp"
#include "pseudoexp/field/relations.hpp"
#include "pseudoexp/intmat/intmat.hpp"

namespace pexp::efield {

using field::RatExpr;
using field::Rational;
using field::Symbol;
using intmat::IntMat;

/// How sigma acts on a basis pair (element, value).
///   Real: sigma x = x, sigma E(x) = E(x).
///   Imaginary: sigma x = -x, E(x) sigma(E(x)) = 1.
///   Untracked: entries adjoined without regard to sigma.
enum class SigmaType { Real, Imaginary, Untracked };

/// Shape of a stored value; decides whether q-th roots can be produced.
///   Torsion: zeta_q on the i omega direction.
///   Monomial: a single sigma-fixed indeterminate.
///   Circle: (1+is)/(1-is) with s sigma-fixed.
///   Solution: coordinate of a solution block; never refined.
///   Opaque: anything else supplied by the user.
enum class ValueKind { Torsion, Monomial, Circle, Solution, Opaque };

const char* to_string(SigmaType t);
const char* to_string(ValueKind k);
SigmaType sigma_type_from(const std::string& s);
ValueKind value_kind_from(const std::string& s);

struct BasisEntry {
  RatExpr element;
  RatExpr value;
  SigmaType sigma = SigmaType::Real;
  ValueKind kind = ValueKind::Opaque;
  std::string origin;
  /// Untrusted metadata ("positive" for values built as fresh positives).
  std::string positivity;
};

struct SolutionRecord {
  std::string variety;
  std::string key;  // canonical key of the solved variety
  std::vector<std::size_t> block;  // basis indices adjoined
  std::vector<RatExpr> point;       // the solution z
  std::vector<RatExpr> values;      // E(z)
  std::map<Symbol, RatExpr> witness;  // variety parameters at the solution
  bool sigma_mode = true;
};

/// Finitely generated partial E-field with involution. E is kept on the
/// Z-span of `basis`; basis[0] = i omega / torsion with value zeta_torsion.
struct EFieldState {
  field::Involution inv;
  Symbol omega;
  unsigned long torsion = 1;
  std::vector<BasisEntry> basis;
  std::vector<field::ReembedReceipt> receipts;
  std::vector<SolutionRecord> solutions;
  std::vector<nlohmann::json> history;  // serialized step certificates
  field::NameSupply names;

  std::vector<RatExpr> elements() const;
  std::vector<RatExpr> values() const;
  /// Indeterminates of K, i.e. everything registered with the involution.
  std::vector<Symbol> indeterminates() const;
};

/// The base state: dom = Z i omega with E(i omega) = 1. Throws MathError if
/// omega is not sigma-fixed, ConfigError if it is not registered.
EFieldState new_base(field::Involution inv, Symbol omega, std::uint64_t seed = 0);

/// Rational coordinates of x on the basis, nullopt outside the Q-span.
std::optional<std::vector<Rational>> coordinates(const EFieldState& s, const RatExpr& x);

/// E(x) for x in the Z-span. Throws NotInDomainError outside the Q-span and
/// NeedsRefinementError when a coordinate is not an integer.
RatExpr E_of(const EFieldState& s, const RatExpr& x);
/// E of an integer combination of basis elements.
RatExpr E_of(const EFieldState& s, const std::vector<long>& coeffs);

/// Replaces basis element `index` by itself / q and its value by a q-th root,
/// re-embedding the function field when needed. Throws UnsupportedError for
/// Solution and Opaque values.
EFieldState refine(const EFieldState& s, std::size_t index, unsigned long q);
/// E_of, refining the basis as often as needed.
RatExpr E_of_refining(EFieldState& s, const RatExpr& x);

/// Applies a re-embedding to every stored expression and records it.
void apply_receipt(EFieldState& s, const field::ReembedReceipt& r);

/// x with E(x) = beta among integer combinations of the basis, if any.
std::optional<std::vector<long>> preimage(const EFieldState& s, const RatExpr& beta);

/// Vectors of the relation lattice whose constant is exactly 1, as rows in
/// the coordinates of the original tuple. nullopt when a constant is neither
/// a root of unity nor a rational number.
std::optional<IntMat> unit_kernel(const field::RelationLattice& l);

/// delta(X / Y) = tr.deg(X, E(X) / Y, E(Y)) - lin.d(X / Y), for X, Y in the Z-span.
long predim(const EFieldState& s, const std::vector<RatExpr>& X, const std::vector<RatExpr>& Y = {});

nlohmann::json to_json(const EFieldState& s);
EFieldState state_from_json(const nlohmann::json& j);

}  // namespace pexp::efield
