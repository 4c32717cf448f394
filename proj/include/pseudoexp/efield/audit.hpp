#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pseudoexp/efield/state.hpp"
#include "pseudoexp/field/frame.hpp"
#include "pseudoexp/field/relations.hpp"

namespace pexp::efield {

/// {x in Z-span : E(x) = 1} against the expected Z i omega.
struct KernelReport {
  IntMat kernel;    // basis coordinates, Hermite rows
  IntMat expected;  // (torsion, 0, ..., 0)
  field::RelationLattice relations;  // products of values that are constant
  bool ok = false;
  std::string detail;
};

struct SigmaEntry {
  std::size_t index = 0;
  SigmaType type = SigmaType::Real;
  bool element = true;
  bool value = true;
};

struct SigmaReport {
  std::vector<SigmaEntry> entries;
  bool ok = true;
};

/// Minimum of delta over a finite family of subsets of the domain.
struct SPReport {
  long minimum = 0;
  std::vector<long> argmin;  // coefficient rows flattened, empty for the empty family
  std::size_t family_size = 0;
  bool ok = true;
};

/// delta of a block of new generators over the previous domain.
struct DeltaReport {
  std::size_t new_elements = 0;
  std::size_t tr_deg = 0;
  std::size_t lin_d = 0;
  long delta = 0;
};

/// Strong-extension certificate: the constructive rule that justifies the
/// step plus a bounded search of delta(X / old domain) over new generators.
struct StrongCertificate {
  std::string rule;
  bool rule_ok = true;
  std::string rule_detail;
  DeltaReport block;
  SPReport search;

  bool ok() const { return rule_ok && search.ok && block.delta >= 0; }
};

struct AuditReport {
  KernelReport kernel;
  SigmaReport sigma;
  SPReport sp;

  bool ok() const { return kernel.ok && sigma.ok && sp.ok; }
};

/// delta for integer combinations of the basis, through one frame of
/// differential rows [d b_j ; d log E(b_j)].
class DeltaOracle {
 public:
  explicit DeltaOracle(const EFieldState& s);

  std::size_t size() const noexcept { return m_; }
  /// delta(X / first `prefix` basis elements), X given by the rows of C.
  long delta(const IntMat& C, std::size_t prefix = 0) const;
  /// tr.deg of (X, E(X)) over the prefix.
  std::size_t tr_deg(const IntMat& C, std::size_t prefix = 0) const;

 private:
  std::size_t rank_with_prefix(const IntMat& C, std::size_t prefix) const;

  std::size_t m_;
  field::RowFrame frame_;
  std::vector<std::size_t> prefix_rank_;
};

KernelReport audit_kernel(const EFieldState& s);
SigmaReport audit_sigma(const EFieldState& s);
/// delta over every nonempty subset of the basis elements from `first` on and
/// every nonzero combination of them with coefficients in [-coeff_bound,
/// coeff_bound], relative to the elements before `first`.
SPReport audit_sp(const EFieldState& s, long coeff_bound = 2, std::size_t first = 0);
AuditReport audit(const EFieldState& s);

/// Certificate for the basis elements from `old_size` on.
StrongCertificate strong_certificate(const EFieldState& s, std::size_t old_size, std::string rule, bool rule_ok,
                                     std::string rule_detail);
/// `old` has to be a prefix of `now` (history and basis length); the rule
/// part cites the certificates of the steps in between.
StrongCertificate is_strong_extension(const EFieldState& old, const EFieldState& now);

nlohmann::json to_json(const KernelReport& r);
nlohmann::json to_json(const SigmaReport& r);
nlohmann::json to_json(const SPReport& r);
nlohmann::json to_json(const DeltaReport& r);
nlohmann::json to_json(const StrongCertificate& r);
nlohmann::json to_json(const AuditReport& r);

}  // namespace pexp::efield
