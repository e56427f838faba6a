#include "vilenkin/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace vilenkin {

namespace {

std::atomic<int> override_threads{0};

int env_threads() {
  static const int value = [] {
    const char* raw = std::getenv("VILENKIN_THREADS");
    if (!raw || !*raw) return 1;
    try {
      const int n = std::stoi(raw);
      return n > 0 ? n : 1;
    } catch (...) {
      return 1;
    }
  }();
  return value;
}

}  // namespace

int max_threads() {
  const int o = override_threads.load(std::memory_order_relaxed);
  return o > 0 ? o : env_threads();
}

void set_max_threads(int n) { override_threads.store(n > 0 ? n : 0, std::memory_order_relaxed); }

}  // namespace vilenkin
