#include "uptail/parallel.hpp"

#include <cstdlib>
#include <string>

namespace uptail {

int worker_count() {
  if (const char* env = std::getenv("UPTAIL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace uptail
