#ifndef DSMOOTH_BUILTINS_HPP
#define DSMOOTH_BUILTINS_HPP

#include "dsmooth/presentation.hpp"
#include "dsmooth/presfmt.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsmooth {

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"sklyanin3",    "sklyanin4",        "commutative3",
                                              "commutative4", "monomial-squares", "monomial-cyclic"};
  return names;
}

/// Built-in presentation. Missing parameter values are left symbolic.
inline Presentation builtin(const std::string& name, const std::vector<std::optional<ParamScalar>>& values = {}) {
  auto value = [&](std::size_t i, const char* symbol) {
    return i < values.size() && values[i] ? *values[i] : ParamScalar::parameter(symbol);
  };
  auto no_params = [&] {
    for (const auto& v : values) {
      if (v) throw std::invalid_argument("built-in '" + name + "' takes no parameters");
    }
  };
  if (name == "sklyanin3") return sklyanin3(value(0, "p"), value(1, "q"), value(2, "r"));
  if (name == "sklyanin4") return sklyanin4(value(0, "alpha"), value(1, "beta"), value(2, "gamma"));
  no_params();
  if (name == "commutative3") return commutative(3);
  if (name == "commutative4") return commutative(4);
  if (name == "monomial-squares") return monomial_squares();
  if (name == "monomial-cyclic") return monomial_cyclic();
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown built-in '" + name + "' (known: " + known + ")");
}

/// "sklyanin3", "sklyanin3(1,2,3*w)" or "sklyanin4(2, 3, -5/7)".
inline Presentation builtin_from_spec(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos) return builtin(spec);
  if (spec.back() != ')') throw std::invalid_argument("built-in spec '" + spec + "' lacks a closing ')'");
  std::vector<std::optional<ParamScalar>> values;
  std::string inner = spec.substr(open + 1, spec.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char c : inner + ",") {
    if (c == ',' && depth == 0) {
      values.emplace_back(parse_scalar(cur));
      cur.clear();
      continue;
    }
    depth += c == '(' ? 1 : (c == ')' ? -1 : 0);
    cur += c;
  }
  return builtin(spec.substr(0, open), values);
}

}  // namespace dsmooth

#endif  // DSMOOTH_BUILTINS_HPP
