// Finitization bounds for entailment checking and successor enumeration.
#pragma once

#include <cstddef>
#include <vector>

#include "act/ast.hpp"

namespace act {

struct BoundsConfig {
  // When set, replaces the default {min, min+1, -1, 0, 1, max-1, max}
  // template; always intersected with the type's range.
  std::vector<BigInt> custom_int_samples;
  // Window half-width for math integers, plus +-2^256 sentinels.
  int math_window = 3;
  // Address sample pool {0 .. addr_domain-1} for plain address values.
  std::size_t addr_domain = 3;
  // Max distinct keys materialized per mapping in enumerated stores.
  std::size_t map_footprint = 2;
  // Max contract-reference nesting when building stores.
  std::size_t store_depth = 4;
  // Hard cap on enumerated contexts; exceeding it yields Unknown verdicts.
  std::size_t max_contexts = 200000;
  // Per-slot cap on enumerated candidate values.
  std::size_t max_value_candidates = 16;
  // callvalue samples for successor enumeration (step); entailment contexts
  // use the uint256 sample set instead.
  std::vector<BigInt> step_callvalues = {0};

  std::vector<BigInt> int_samples(const IntType& t) const;
};

}  // namespace act
