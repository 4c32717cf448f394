#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace pexp::field {

/// Interned indeterminate name. Equality is identity of the interned string;
/// ordering is by name, so canonical forms do not depend on interning order.
class Symbol {
 public:
  Symbol() = default;
  static Symbol intern(std::string_view name);

  const std::string& name() const { return *name_; }
  bool valid() const noexcept { return name_ != nullptr; }

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name_->compare(*b.name_) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  explicit Symbol(const std::string* p) : name_(p) {}
  const std::string* name_ = nullptr;
  friend struct std::hash<Symbol>;
};

/// Names accepted by the expression grammar: [a-z][a-z0-9_]*, excluding the
/// reserved words `i` and `zeta`.
bool is_valid_name(std::string_view name);

}  // namespace pexp::field

template <>
struct std::hash<pexp::field::Symbol> {
  std::size_t operator()(pexp::field::Symbol s) const noexcept { return std::hash<const void*>{}(s.name_); }
};
