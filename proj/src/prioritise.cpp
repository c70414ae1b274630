#include "bdiv/prioritise.hpp"

#include <algorithm>
#include <json.hpp>

#include "bdiv/error.hpp"
#include "bdiv/rng.hpp"

namespace bdiv {

Ordering rank_max_mean(const DistanceMatrix& dm) {
  const std::size_t n = dm.size();
  if (n < 2) throw Error(ErrorKind::TooFewTests, "max-mean ranking needs at least two tests");

  // farthest pair; strict '>' keeps the first pair in row-major order
  std::size_t first = 0;
  std::size_t second = 1;
  double best = dm(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dm(i, j) > best) {
        best = dm(i, j);
        first = i;
        second = j;
      }
    }
  }

  std::vector<bool> selected(n, false);
  std::vector<std::size_t> order{first, second};
  selected[first] = selected[second] = true;

  // Every candidate is compared against the same selected set, so comparing
  // sums is equivalent to comparing means.
  std::vector<double> sum(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) sum[k] = dm(k, first) + dm(k, second);

  while (order.size() < n) {
    std::size_t pick = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (selected[k]) continue;
      if (pick == n || sum[k] > sum[pick]) pick = k;
    }
    selected[pick] = true;
    order.push_back(pick);
    for (std::size_t k = 0; k < n; ++k) sum[k] += dm(k, pick);
  }

  Ordering out{{}, "max-mean:" + dm.measure(), std::nullopt};
  out.ids.reserve(n);
  for (auto k : order) out.ids.push_back(dm.ids()[k]);
  return out;
}

Ordering rank_random(const std::vector<std::string>& ids, std::uint64_t seed) {
  if (ids.empty()) throw Error(ErrorKind::EmptyInput, "nothing to order");
  Ordering out{ids, "random", seed};
  Rng rng(seed);
  rng.shuffle(out.ids);
  return out;
}

Ordering rank_greedy_best(const OutcomeMatrix& eval_tom) {
  const std::size_t n = eval_tom.num_tests();
  const std::size_t m = eval_tom.num_mutants();
  std::vector<bool> alive(m, true);
  std::vector<bool> used(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);

  while (order.size() < n) {
    std::size_t pick = n;
    std::size_t pick_kills = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      std::size_t kills = 0;
      const auto row = eval_tom.row(t);
      for (std::size_t c = 0; c < m; ++c) kills += alive[c] && row[c] == Outcome::Fail;
      if (kills > pick_kills) {
        pick = t;
        pick_kills = kills;
      }
    }
    if (pick == n) break;  // nothing left to kill
    used[pick] = true;
    order.push_back(pick);
    const auto row = eval_tom.row(pick);
    for (std::size_t c = 0; c < m; ++c) {
      if (row[c] == Outcome::Fail) alive[c] = false;
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (!used[t]) order.push_back(t);
  }

  Ordering out{{}, "greedy-best", std::nullopt};
  out.ids.reserve(n);
  for (auto t : order) out.ids.push_back(eval_tom.test_ids()[t]);
  return out;
}

std::string write_ordering(const Ordering& ordering) {
  std::string out;
  for (const auto& id : ordering.ids) {
    out += id;
    out += '\n';
  }
  return out;
}

std::string write_ordering_sidecar(const Ordering& ordering, const std::string& source_matrix) {
  nlohmann::ordered_json j;
  j["technique"] = ordering.technique;
  j["seed"] = ordering.seed ? nlohmann::ordered_json(*ordering.seed) : nlohmann::ordered_json(nullptr);
  j["source_matrix"] = source_matrix;
  return j.dump(2) + "\n";
}

bool is_permutation_of(const Ordering& ordering, const std::vector<std::string>& ids) {
  if (ordering.ids.size() != ids.size()) return false;
  auto a = ordering.ids;
  auto b = ids;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b && std::adjacent_find(a.begin(), a.end()) == a.end();
}

}  // namespace bdiv
