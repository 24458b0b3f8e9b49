#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace oneway {

/// Worker count used by Monte Carlo loops. Initialized from ONEWAY_THREADS when
/// set, otherwise 1. Results never depend on this value.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Splits [0, total) into fixed-size chunks and calls fn(chunk_index, begin, end)
/// for each, possibly concurrently. Chunk boundaries depend only on `chunk`, so a
/// caller that seeds per chunk gets thread-count-independent results.
void for_each_chunk(std::size_t total, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace oneway
