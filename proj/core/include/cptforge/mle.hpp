#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cptforge/dist.hpp"
#include "cptforge/finset.hpp"

namespace cptforge {

// Frequentist learning: normalises a non-empty count vector. Throws
// kEmptyMultiset when the total is zero.
Dist mle(const Multiset& phi);

// prod_i omega(i)^phi(i), with 0^0 = 1.
Rational likelihood(const Multiset& phi, const Dist& omega);

// Learns the first marginal and the conditional channel of a row-positive
// table, row by row. Agrees exactly with disintegrate(mle(phi)).
Disintegration mle_decompose(const JointMultiset& phi);

// The two composites on the multiset of multisets
//   1|2a + 4c> + 2|1a + 1b + 1c>
// showing that learning does not commute with the monad multiplications.
struct MonadCounterexample {
  Dist flatten_then_normalize;
  Dist normalize_then_flatten;
};
MonadCounterexample monad_counterexample();

// Visits every distribution over {0..n-1} whose entries are multiples of
// 1/steps, in lexicographic order of the numerators.
void for_each_grid_dist(std::size_t n, unsigned steps, const std::function<void(const Dist&)>& visit);

struct GridSearchResult {
  Dist best;
  Rational best_likelihood;
  std::size_t points_visited = 0;
};

// Brute-force likelihood maximisation over the grid. Ties keep the
// lexicographically smallest grid point.
GridSearchResult grid_maximize_likelihood(const Multiset& phi, unsigned steps = 50);

}  // namespace cptforge
