#include "pseudoexp/field/symbol.hpp"

#include <mutex>
#include <unordered_set>

#include "pseudoexp/errors.hpp"

namespace pexp::field {

Symbol Symbol::intern(std::string_view name) {
  static std::mutex mu;
  static std::unordered_set<std::string> table;
  if (name.empty()) throw ParseError("empty indeterminate name");
  std::lock_guard lock(mu);
  auto [it, inserted] = table.emplace(name);
  return Symbol(&*it);
}

bool is_valid_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return name != "i" && name != "zeta";
}

}  // namespace pexp::field
