#pragma once

#include <cstddef>
#include <functional>

namespace affwalk {

/// Environment variable overriding the worker thread count.
inline constexpr const char* kThreadsEnvVar = "AFFWALK_THREADS";

/// Thread count from AFFWALK_THREADS, else hardware concurrency (at least 1).
std::size_t default_threads();

/// Runs body(chunk_index, begin, end) over fixed-size chunks of [0, count).
/// Chunk boundaries depend only on `count` and `chunk`, never on `threads`,
/// so per-chunk results are identical for every thread count.
void parallel_chunks(std::size_t count, std::size_t chunk, std::size_t threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Pairwise (tree) sum with a fixed shape for a given input length.
double pairwise_sum(const double* values, std::size_t n);

}  // namespace affwalk
