#include "budget.hpp"

#include <cstdlib>
#include <string>

namespace clutterforge {

Budget default_budget() {
  Budget b;
  if (const char* env = std::getenv("CLUTTERFORGE_BUDGET")) {
    try {
      unsigned long long v = std::stoull(env);
      if (v > 0) b.search_nodes = v;
    } catch (...) {
    }
  }
  return b;
}

}  // namespace clutterforge
