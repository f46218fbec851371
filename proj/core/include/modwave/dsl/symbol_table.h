#ifndef MODWAVE_DSL_SYMBOL_TABLE_H_
#define MODWAVE_DSL_SYMBOL_TABLE_H_

#include <string>
#include <string_view>
#include <vector>

namespace modwave::dsl {

enum class SymbolRole {
  kTime,           // t
  kScalar,         // constant-valued parameter (f_c, A_c, m, ...)
  kSignal,         // time-varying stream, written name(t)
  kMathConstant,   // pi
};

std::string_view to_string(SymbolRole role);

struct SymbolInfo {
  std::string name;
  SymbolRole role = SymbolRole::kScalar;
  std::string unit;
  std::string description;
};

class SymbolTable {
 public:
  // Throws std::invalid_argument on a duplicate name or when the role
  // disagrees with the `(t)` suffix convention.
  void add(SymbolInfo info);

  const SymbolInfo* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<SymbolInfo>& entries() const { return entries_; }

  // Every symbol used by the bundled corpus: t, f_c, f_m, f(t), A, A_c, m,
  // k_f, k_p, phi, phi_c, phi_m, d(t), I(t), Q(t), m(t), n, pi.
  static SymbolTable standard();

 private:
  std::vector<SymbolInfo> entries_;
};

}  // namespace modwave::dsl

#endif  // MODWAVE_DSL_SYMBOL_TABLE_H_
