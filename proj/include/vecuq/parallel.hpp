#pragma once

#include <cstddef>
#include <functional>

namespace vecuq {

// Worker count: VECUQ_THREADS if set to a positive integer, otherwise the
// hardware concurrency. Read once per process.
std::size_t thread_count();

// Runs body(begin, end) over disjoint chunks of [0, n). Each index is visited
// exactly once; results are deterministic as long as body writes only to
// index-owned slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 64);

}  // namespace vecuq
