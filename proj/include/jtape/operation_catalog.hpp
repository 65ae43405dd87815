#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace jtape {

struct OperationInfo {
  std::string_view name;
  int arity;  // 1 or 2
};

/// Names and arities of the built-in operations. The derivative rules
/// themselves are static types; this table exists for introspection by tools
/// and tests.
inline constexpr std::array<OperationInfo, 12> operationCatalog() {
  return {{
      {"add", 2},
      {"sub", 2},
      {"mul", 2},
      {"div", 2},
      {"pow", 2},
      {"neg", 1},
      {"sin", 1},
      {"cos", 1},
      {"exp", 1},
      {"log", 1},
      {"sqrt", 1},
      {"abs", 1},
  }};
}

}  // namespace jtape
