#pragma once

#include "apxerr/bigint.hpp"
#include "apxerr/joingraph.hpp"

#include <vector>

namespace apxerr {

/// Partial assignment of error bits: (bit index in 0..m, value) pairs,
/// index-ascending, at most one value per index.
struct Query {
  std::vector<std::pair<int, bool>> bits;

  Query() = default;
  Query(std::initializer_list<std::pair<int, bool>> init);

  void set(int index, bool value);
  const bool* value_of(int index) const;
  void check(int m) const;
};

/// Conditioned model count: drops rows inconsistent with `q` (as a view),
/// propagates leaves-to-root (messages marginalize the sender's conditioned
/// product table onto the edge label), returns the root sum. Components
/// multiply; free variables contribute 2 each unless conditioned.
BigInt sat_count(const JoinTree& tree, const Query& q);

/// Element-wise sat_count; queries run concurrently over the immutable tree.
std::vector<BigInt> sat_count_batch(const JoinTree& tree, const std::vector<Query>& queries,
                                    int threads);

} // namespace apxerr
