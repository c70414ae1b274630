#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bdiv/distance.hpp"
#include "bdiv/outcome_matrix.hpp"

namespace bdiv {

/// A full permutation of a test set, in execution order.
struct Ordering {
  std::vector<std::string> ids;
  std::string technique;
  std::optional<std::uint64_t> seed;
};

/// Diversity ranking: starts with the farthest pair, then repeatedly appends
/// the candidate with the largest mean distance to everything selected so far.
/// Ties go to the lower canonical index, including inside the first pair.
Ordering rank_max_mean(const DistanceMatrix& dm);

/// Uniform random permutation (Fisher-Yates on the seeded generator).
Ordering rank_random(const std::vector<std::string>& ids, std::uint64_t seed);

/// Reference ordering with full fault knowledge: each step takes the test
/// that kills the most still-alive mutants. Once everything is killed the
/// rest follow in canonical order.
Ordering rank_greedy_best(const OutcomeMatrix& eval_tom);

/// One id per line.
std::string write_ordering(const Ordering& ordering);

/// {"technique", "seed", "source_matrix"}; seed is null when not applicable.
std::string write_ordering_sidecar(const Ordering& ordering, const std::string& source_matrix);

bool is_permutation_of(const Ordering& ordering, const std::vector<std::string>& ids);

}  // namespace bdiv
