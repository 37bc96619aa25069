#include "qdyn/vars.hpp"

namespace qdyn {

const char* var_name(int v) {
  static const char* names[VAR_COUNT] = {"s",  "z1", "z2", "z3", "z4", "al",
                                         "be", "pi", "g1", "g2", "g3", "g4"};
  return names[v];
}

std::string Monomial::str() const {
  if (is_one()) return "1";
  std::string s;
  for (int i = 0; i < VAR_COUNT; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += var_name(i);
    if (e[i] != 1) {
      s += "^";
      s += std::to_string(e[i]);
    }
  }
  return s;
}

}  // namespace qdyn
