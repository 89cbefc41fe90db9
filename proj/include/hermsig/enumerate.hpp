// Graded enumeration of integer coefficient tuples, shared by the reference-form
// search, the signature-twist search and the bounded certificate search.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hermsig {

// Visits tuples in a fixed order: heights h = 1..max_height; within a height an
// odometer with the LAST coordinate fastest and digit values 0, 1, -1, 2, -2, ...;
// tuples whose maximum |digit| is below h are skipped (already visited earlier).
// The visitor gets a std::vector<std::int64_t> and returns true to stop; the
// function returns whether a visitor stopped the walk.
template <typename Visit>
bool graded_tuples(std::size_t len, int max_height, Visit&& visit) {
  if (len == 0) return false;
  auto value_of = [](std::size_t t) -> std::int64_t {
    if (t == 0) return 0;
    return (t % 2 == 1) ? std::int64_t((t + 1) / 2) : -std::int64_t(t / 2);
  };
  for (int h = 1; h <= max_height; ++h) {
    const std::size_t radix = 2 * std::size_t(h) + 1;
    std::vector<std::size_t> idx(len, 0);
    std::vector<std::int64_t> vals(len, 0);
    while (true) {
      bool at_height = false;
      for (std::size_t i = 0; i < len; ++i) {
        vals[i] = value_of(idx[i]);
        if (vals[i] == h || vals[i] == -h) at_height = true;
      }
      if (at_height && visit(vals)) return true;
      std::size_t pos = len;
      bool wrapped = true;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < radix) {
          wrapped = false;
          break;
        }
        idx[pos] = 0;
      }
      if (wrapped) break;
    }
  }
  return false;
}

}  // namespace hermsig
