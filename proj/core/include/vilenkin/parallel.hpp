#pragma once

// Static-partition parallel loops. Work items must write disjoint outputs;
// any reduction is done by the caller in a fixed order, so results never
// depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace vilenkin {

/// Thread cap: set_max_threads() override, else VILENKIN_THREADS, else 1.
int max_threads();
/// 0 clears the override.
void set_max_threads(int n);

/// Calls body(begin, end) over a partition of [0, count). Runs inline when
/// count < 2 * grain or only one thread is allowed.
template <class Body>
void parallel_for(std::size_t count, std::size_t grain, Body&& body) {
  const std::size_t cap = static_cast<std::size_t>(max_threads());
  const std::size_t chunks =
      std::min(cap, grain == 0 ? count : count / std::max<std::size_t>(grain, 1));
  if (chunks < 2) {
    if (count) body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(chunks - 1);
  const std::size_t step = count / chunks;
  const std::size_t extra = count % chunks;
  std::size_t begin = 0;
  std::size_t first_end = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t end = begin + step + (c < extra ? 1 : 0);
    if (c == 0) {
      first_end = end;
    } else {
      workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
    begin = end;
  }
  body(std::size_t{0}, first_end);
}

}  // namespace vilenkin
