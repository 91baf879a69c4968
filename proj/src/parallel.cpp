#include "covering/parallel.hpp"

#include <cstdlib>
#include <string>

namespace covering {

std::size_t worker_count() {
  static const std::size_t cached = [] {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("GREEDY_COVER_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    }
    return n;
  }();
  return cached;
}

}  // namespace covering
