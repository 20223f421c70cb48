#include "zetagram/parallel.hpp"

#include <cstdlib>
#include <string>

namespace zetagram {

int default_workers() {
  if (const char* env = std::getenv("ZETAGRAM_WORKERS")) {
    try {
      const int n = std::stoi(std::string(env));
      if (n >= 1 && n <= 1024) return n;
    } catch (...) {
      // fall through to the default
    }
  }
  return 1;
}

}  // namespace zetagram
