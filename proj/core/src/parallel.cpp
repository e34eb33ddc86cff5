#include "nsrand/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nsrand {

std::size_t resolve_workers(std::size_t requested) {
  std::size_t workers = requested;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("NSRAND_THREADS"); cap != nullptr) {
    try {
      const long value = std::stol(cap);
      if (value > 0) workers = std::min(workers, static_cast<std::size_t>(value));
    } catch (const std::exception&) {
      // Ignore malformed values.
    }
  }
  return workers;
}

}  // namespace nsrand
