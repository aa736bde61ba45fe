#include "anosov/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace anosov {

unsigned worker_threads_from_env() {
  unsigned fallback = std::thread::hardware_concurrency();
  if (fallback == 0) fallback = 1;
  const char* raw = std::getenv("ANOSOV_LAB_THREADS");
  if (raw == nullptr || *raw == '\0') return fallback;
  unsigned value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return fallback;
  return value;
}

}  // namespace anosov
