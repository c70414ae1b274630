#include "bdiv/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "bdiv/error.hpp"
#include "bdiv/rng.hpp"

namespace bdiv {

namespace {

struct Ranked {
  std::vector<long long> doubled_ranks;  // 2 * midrank, always an integer
  double tie_term = 0.0;                 // sum of (t^3 - t) over tie groups
};

// Ranks of the pooled sample a ++ b.
Ranked rank_pooled(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });

  Ranked r;
  r.doubled_ranks.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[idx[j + 1]] == pooled[idx[i]]) ++j;
    // positions i..j (0-based) share midrank ((i+1)+(j+1))/2
    const long long doubled = static_cast<long long>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) r.doubled_ranks[idx[k]] = doubled;
    const double t = static_cast<double>(j - i + 1);
    r.tie_term += t * t * t - t;
    i = j + 1;
  }
  return r;
}

void check_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidInput, "Mann-Whitney needs two non-empty samples");
  const double v = a.front();
  const auto same = [v](double x) { return x == v; };
  if (std::all_of(a.begin(), a.end(), same) && std::all_of(b.begin(), b.end(), same)) {
    throw Error(ErrorKind::DegenerateSamples, "all values are identical");
  }
}

double u_statistic(const Ranked& r, std::size_t na) {
  long long doubled_sum = 0;
  for (std::size_t k = 0; k < na; ++k) doubled_sum += r.doubled_ranks[k];
  const double rank_sum = static_cast<double>(doubled_sum) / 2.0;
  const double n = static_cast<double>(na);
  return rank_sum - n * (n + 1.0) / 2.0;
}

}  // namespace

double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const Ranked r = rank_pooled(a, b);
  const std::size_t n = r.doubled_ranks.size();
  // Enumerate subsets of the smaller sample's size; the two-sided tail is
  // symmetric so either sample's rank sum gives the same p-value.
  const bool use_a = a.size() <= b.size();
  const std::size_t k = use_a ? a.size() : b.size();
  const std::size_t offset = use_a ? 0 : a.size();

  long long observed = 0;
  for (std::size_t i = 0; i < k; ++i) observed += r.doubled_ranks[offset + i];
  const long long expected = static_cast<long long>(k * (n + 1));  // E[2R] = k(N+1)
  const long long observed_dev = std::llabs(observed - expected);

  // no k-subset can exceed the sum of the k largest ranks
  std::vector<long long> sorted_ranks = r.doubled_ranks;
  std::sort(sorted_ranks.begin(), sorted_ranks.end(), std::greater<>());
  const long long max_sum = std::accumulate(sorted_ranks.begin(), sorted_ranks.begin() + static_cast<std::ptrdiff_t>(k), 0LL);
  // ways[j][s]: number of j-subsets of the items seen so far with doubled rank sum s
  std::vector<std::vector<double>> ways(k + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  long long reach = 0;
  for (std::size_t item = 0; item < n; ++item) {
    const long long d = r.doubled_ranks[item];
    reach = std::min(reach + d, max_sum);
    for (std::size_t j = std::min(k, item + 1); j >= 1; --j) {
      auto& dst = ways[j];
      const auto& src = ways[j - 1];
      for (long long s = reach; s >= d; --s) dst[static_cast<std::size_t>(s)] += src[static_cast<std::size_t>(s - d)];
    }
  }

  double total = 0.0;
  double extreme = 0.0;
  for (long long s = 0; s <= max_sum; ++s) {
    const double w = ways[k][static_cast<std::size_t>(s)];
    if (w == 0.0) continue;
    total += w;
    if (std::llabs(s - expected) >= observed_dev) extreme += w;
  }
  return std::min(1.0, extreme / total);
}

double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const Ranked r = rank_pooled(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  const double u = u_statistic(r, a.size());
  const double mean = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - r.tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;
  const double z = std::max(0.0, std::abs(u - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  MannWhitneyResult res;
  res.u = u_statistic(rank_pooled(a, b), a.size());
  res.exact = std::min(a.size(), b.size()) < 8;
  res.p = res.exact ? mann_whitney_exact_p(a, b) : mann_whitney_normal_p(a, b);
  return res;
}

std::vector<HolmDecision> holm_bonferroni(std::span<const double> p_values, double alpha) {
  const std::size_t m = p_values.size();
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidInput, "p-value outside [0,1]");
  }
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });

  std::vector<HolmDecision> out(m);
  double running = 0.0;
  bool still_rejecting = true;
  for (std::size_t rank = 0; rank < m; ++rank) {
    const std::size_t i = idx[rank];
    running = std::max(running, std::min(1.0, static_cast<double>(m - rank) * p_values[i]));
    still_rejecting = still_rejecting && running < alpha;
    out[i] = {running, still_rejecting};
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double standard_deviation(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

Interval bootstrap_median_ci(std::span<const double> values, double level, std::size_t resamples,
                             std::uint64_t seed) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "bootstrap of nothing");
  Rng rng(seed);
  std::vector<double> medians;
  medians.reserve(resamples);
  std::vector<double> draw(values.size());
  for (std::size_t r = 0; r < resamples; ++r) {
    for (auto& d : draw) d = values[static_cast<std::size_t>(rng.below(values.size()))];
    medians.push_back(median(draw));
  }
  std::sort(medians.begin(), medians.end());
  const double tail = (1.0 - level) / 2.0;
  const auto pick = [&](double q) {
    const auto pos = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1) + 0.5));
    return medians[std::min(pos, resamples - 1)];
  };
  return {pick(tail), pick(1.0 - tail)};
}

}  // namespace bdiv
