#pragma once

#include <cstddef>
#include <functional>

namespace nnapprox {

/// Worker count: NNAPPROX_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(begin, end) for each. Chunk boundaries depend only on n and the
/// worker count, so reductions done per chunk and combined in chunk order
/// are reproducible.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace nnapprox
