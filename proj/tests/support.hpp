#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "bdiv/outcome_matrix.hpp"
#include "bdiv/rng.hpp"

namespace bdiv::testing {

inline std::vector<std::string> toy_test_ids() {
  return {"testYear", "testMonthLength", "testMonth", "testIsLeapYear", "testDay"};
}

// Five unit tests of a date class run against five hand-made mutants v1..v5.
inline std::vector<std::vector<int>> toy_rows() {
  return {
      {0, 1, 0, 1, 1},  // testYear
      {1, 0, 0, 1, 0},  // testMonthLength
      {1, 0, 0, 1, 0},  // testMonth
      {0, 1, 0, 1, 1},  // testIsLeapYear
      {0, 0, 1, 0, 1},  // testDay
  };
}

inline OutcomeMatrix matrix_from_ints(const std::vector<std::string>& tests, const std::vector<std::vector<int>>& rows,
                                      std::vector<std::string> mutants = {}) {
  if (mutants.empty()) {
    for (std::size_t m = 0; m < rows.front().size(); ++m) mutants.push_back("v" + std::to_string(m + 1));
  }
  std::vector<Outcome> cells;
  for (const auto& r : rows) {
    for (int v : r) cells.push_back(v == 1 ? Outcome::Fail : v == 0 ? Outcome::Pass : Outcome::Unknown);
  }
  return {tests, std::move(mutants), std::move(cells), "test"};
}

inline OutcomeMatrix toy_tom() { return matrix_from_ints(toy_test_ids(), toy_rows()); }

inline std::vector<std::vector<int>> random_rows(Rng& rng, std::size_t n, std::size_t m, double fail = 0.4) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(m));
  for (auto& r : rows) {
    for (auto& v : r) v = rng.bernoulli(fail) ? 1 : 0;
  }
  return rows;
}

inline OutcomeMatrix random_tom(Rng& rng, std::size_t n, std::size_t m, double fail = 0.4) {
  std::vector<std::string> tests;
  for (std::size_t i = 0; i < n; ++i) tests.push_back("t" + std::to_string(i));
  return matrix_from_ints(tests, random_rows(rng, n, m, fail));
}

// ---------------------------------------------------------------------------
// oracles
// ---------------------------------------------------------------------------

// Per-pair, per-column re-classification straight from the formulas.
inline double oracle_distance(const std::vector<int>& a, const std::vector<int>& b, bool mcc) {
  double tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 1 && b[k] == 1) tp += 1;
    if (a[k] == 0 && b[k] == 0) tn += 1;
    if (a[k] == 1 && b[k] == 0) fp += 1;
    if (a[k] == 0 && b[k] == 1) fn += 1;
  }
  if (!mcc) return 1.0 - (tp + tn) / (tp + tn + fp + fn);
  const double d = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (d == 0) return a == b ? 0.0 : 0.5;
  return (1.0 - (tp * tn - fp * fn) / std::sqrt(d)) / 2.0;
}

// Full-table Wagner-Fischer.
inline std::size_t oracle_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// Exact two-sided Mann-Whitney p by enumerating every way of assigning the
// pooled (tie-free) ranks to the first sample.
inline double oracle_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = pooled.size();
  const std::size_t k = a.size();
  double observed = 0;
  for (double x : a) observed += static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin() + 1);
  const double expected = static_cast<double>(k) * static_cast<double>(n + 1) / 2.0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  double total = 0, extreme = 0;
  do {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s += static_cast<double>(i + 1);
    }
    total += 1;
    if (std::abs(s - expected) >= std::abs(observed - expected) - 1e-9) extreme += 1;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return extreme / total;
}

// APFD as the mean detected fraction over the n prefixes, minus 1/(2n).
inline double oracle_apfd(const std::vector<std::vector<int>>& rows_in_order) {
  const std::size_t n = rows_in_order.size();
  const std::size_t m = rows_in_order.front().size();
  std::vector<bool> found(m, false);
  double area = 0;
  for (const auto& row : rows_in_order) {
    for (std::size_t c = 0; c < m; ++c) found[c] = found[c] || row[c] == 1;
    area += static_cast<double>(std::count(found.begin(), found.end(), true)) / static_cast<double>(m);
  }
  return area / static_cast<double>(n) - 1.0 / (2.0 * static_cast<double>(n));
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("bdiv-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace bdiv::testing
