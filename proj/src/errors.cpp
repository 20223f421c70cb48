#include "zetagram/errors.hpp"

#include <iostream>
#include <mutex>

namespace zetagram {

void log_warning(const std::string& msg) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[zetagram] warning: " << msg << '\n';
}

}  // namespace zetagram
