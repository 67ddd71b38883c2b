#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace flintlab {

struct IndexRange {
  std::uint64_t first = 0;  // inclusive
  std::uint64_t last = 0;   // inclusive
};

/// Splits [first, last] at multiples of `chunk` (chunk c holds indices
/// c*chunk+1 .. (c+1)*chunk), so the partition of a sub-range matches the
/// partition of any range containing it.
inline std::vector<IndexRange> aligned_chunks(std::uint64_t first, std::uint64_t last,
                                              std::uint64_t chunk) {
  std::vector<IndexRange> out;
  if (first > last || chunk == 0) return out;
  std::uint64_t lo = first;
  while (lo <= last) {
    const std::uint64_t c = (lo - 1) / chunk;
    const std::uint64_t hi = std::min(last, (c + 1) * chunk);
    out.push_back({lo, hi});
    if (hi == last) break;
    lo = hi + 1;
  }
  return out;
}

/// Evaluates fn on every chunk using up to `threads` workers and returns the
/// results in chunk order. The first exception (in chunk order) is rethrown.
template <class Result, class Fn>
std::vector<Result> map_chunks(const std::vector<IndexRange>& chunks, unsigned threads, Fn&& fn) {
  std::vector<Result> results(chunks.size());
  std::vector<std::exception_ptr> errors(chunks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < chunks.size(); i = next.fetch_add(1)) {
      try {
        results[i] = fn(chunks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chunks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace flintlab
