#include "bdiv/synthgen.hpp"

#include <cstdio>
#include <json.hpp>

#include "bdiv/error.hpp"
#include "bdiv/rng.hpp"

namespace bdiv {

namespace {

std::string padded(char prefix, std::size_t value, std::size_t count) {
  const int width = static_cast<int>(std::to_string(count).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, value);
  return buf;
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void validate(const SynthParams& p) {
  if (p.n_tests == 0 || p.n_mutants == 0) throw Error(ErrorKind::InvalidParams, "need at least one test and mutant");
  if (p.n_clusters == 0 || p.n_clusters > p.n_tests) {
    throw Error(ErrorKind::InvalidParams, "n_clusters must lie in [1, n_tests]");
  }
  if (!is_probability(p.base_fail_rate) || !is_probability(p.intra_cluster_agreement) ||
      !is_probability(p.noise_flip)) {
    throw Error(ErrorKind::InvalidParams, "probabilities must lie in [0,1]");
  }
}

SynthParams synth_params_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidParams, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidParams, "parameters must be a JSON object");

  SynthParams p;
  auto count = [](const nlohmann::json& v, const std::string& key) -> std::size_t {
    if (!v.is_number_unsigned()) throw Error(ErrorKind::InvalidParams, key + " must be a non-negative integer");
    return v.get<std::size_t>();
  };
  auto real = [](const nlohmann::json& v, const std::string& key) -> double {
    if (!v.is_number()) throw Error(ErrorKind::InvalidParams, key + " must be a number");
    return v.get<double>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "n_tests") p.n_tests = count(value, key);
    else if (key == "n_mutants") p.n_mutants = count(value, key);
    else if (key == "n_clusters") p.n_clusters = count(value, key);
    else if (key == "base_fail_rate") p.base_fail_rate = real(value, key);
    else if (key == "intra_cluster_agreement") p.intra_cluster_agreement = real(value, key);
    else if (key == "noise_flip") p.noise_flip = real(value, key);
    else if (key == "seed") p.seed = count(value, key);
    else throw Error(ErrorKind::InvalidParams, "unknown parameter '" + key + "'");
  }
  validate(p);
  return p;
}

SyntheticTom generate_tom(const SynthParams& p) {
  validate(p);
  Rng rng(p.seed);

  std::vector<bool> prototypes(p.n_clusters * p.n_mutants);
  for (std::size_t k = 0; k < prototypes.size(); ++k) prototypes[k] = rng.bernoulli(p.base_fail_rate);

  std::vector<std::size_t> cluster_of(p.n_tests);
  for (std::size_t t = 0; t < p.n_tests; ++t) cluster_of[t] = t % p.n_clusters;
  rng.shuffle(cluster_of);

  std::vector<std::string> tests;
  std::vector<std::string> mutants;
  for (std::size_t t = 0; t < p.n_tests; ++t) tests.push_back(padded('t', t, p.n_tests));
  for (std::size_t m = 0; m < p.n_mutants; ++m) mutants.push_back(padded('m', m, p.n_mutants));

  std::vector<Outcome> cells;
  cells.reserve(p.n_tests * p.n_mutants);
  for (std::size_t t = 0; t < p.n_tests; ++t) {
    const std::size_t base = cluster_of[t] * p.n_mutants;
    for (std::size_t m = 0; m < p.n_mutants; ++m) {
      bool fail = rng.bernoulli(p.intra_cluster_agreement) ? static_cast<bool>(prototypes[base + m])
                                                           : rng.bernoulli(p.base_fail_rate);
      if (rng.bernoulli(p.noise_flip)) fail = !fail;
      cells.push_back(fail ? Outcome::Fail : Outcome::Pass);
    }
  }

  char provenance[160];
  std::snprintf(provenance, sizeof provenance, "synthgen tests=%zu mutants=%zu clusters=%zu seed=%llu", p.n_tests,
                p.n_mutants, p.n_clusters, static_cast<unsigned long long>(p.seed));
  return {OutcomeMatrix(std::move(tests), std::move(mutants), std::move(cells), provenance), std::move(cluster_of)};
}

std::string write_ground_truth_csv(const SyntheticTom& synth) {
  std::string out = "test_id,cluster\n";
  for (std::size_t t = 0; t < synth.tom.num_tests(); ++t) {
    out += synth.tom.test_ids()[t] + "," + std::to_string(synth.cluster_of[t]) + "\n";
  }
  return out;
}

}  // namespace bdiv
