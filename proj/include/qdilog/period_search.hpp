#pragma once

// Breadth-first search for ν-periods of small exchange matrices.

#include <cstddef>
#include <vector>

#include "qdilog/exchange.hpp"

namespace qdilog {

struct SearchLimits {
  std::size_t max_rank = 4;
  std::size_t max_depth = 12;
};

// Every sequence of length <= depth whose tropical state returns to the
// initial one up to relabeling, in BFS order. Tropical states already reached
// by a shorter sequence are not expanded again, and a returning sequence is
// reported but not extended. Throws std::invalid_argument past the limits.
std::vector<MutationSchedule> find_periods(const ExchangeMatrix& b, std::size_t depth,
                                           const SearchLimits& limits = SearchLimits());

}  // namespace qdilog
