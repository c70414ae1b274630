#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bdiv/outcome_matrix.hpp"

namespace bdiv {

struct SynthParams {
  std::size_t n_tests = 100;
  std::size_t n_mutants = 500;
  std::size_t n_clusters = 5;
  double base_fail_rate = 0.3;
  double intra_cluster_agreement = 0.95;
  double noise_flip = 0.01;
  std::uint64_t seed = 7;
};

/// Throws InvalidParams unless 1 <= n_clusters <= n_tests, n_mutants >= 1
/// and every probability lies in [0,1].
void validate(const SynthParams& p);

/// Reads a JSON object; absent keys keep their defaults, unknown keys and
/// wrong types are InvalidParams.
SynthParams synth_params_from_json(std::string_view text);

struct SyntheticTom {
  OutcomeMatrix tom;
  std::vector<std::size_t> cluster_of;  // by test row
};

/// Planted-cluster outcome matrix. Tests are spread evenly over the clusters
/// (sizes differ by at most one) in a seeded random arrangement. Each cluster
/// draws a prototype row, Fail with probability base_fail_rate per cell; a
/// member keeps each prototype cell with probability intra_cluster_agreement
/// and otherwise redraws it, then every cell flips with probability
/// noise_flip. Never produces Unknown.
SyntheticTom generate_tom(const SynthParams& p);

/// test_id,cluster
std::string write_ground_truth_csv(const SyntheticTom& synth);

}  // namespace bdiv
