#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bdiv/ingest.hpp"
#include "bdiv/outcome_matrix.hpp"
#include "bdiv/prioritise.hpp"
#include "bdiv/statistics.hpp"

namespace bdiv {

/// Fraction of the killable eval mutants killed by the first
/// max(1, floor(budget * n / 100)) tests of the ordering.
double kills_at_budget(const Ordering& ordering, const OutcomeMatrix& eval_tom, double budget_percent);

/// Average percentage of faults detected, mutants standing in for faults:
/// 1 - sum(first detecting position) / (n * m) + 1 / (2n).
double apfd(const Ordering& ordering, const OutcomeMatrix& eval_tom);

enum class Technique { Accuracy, Mcc, Ncd, Jaccard, Levenshtein, Random, GreedyBest };

std::string_view technique_name(Technique t);
std::optional<Technique> parse_technique(std::string_view name);
bool is_artefact(Technique t);

std::vector<double> default_budgets();

struct ExperimentConfig {
  double split = 0.8;
  std::size_t repetitions = 20;
  std::vector<double> budgets = default_budgets();
  std::vector<Technique> techniques{Technique::Accuracy, Technique::Mcc, Technique::Random, Technique::GreedyBest};
  std::uint64_t base_seed = 42;
  double alpha = 0.05;
  std::size_t bootstrap_resamples = 1000;
  unsigned jobs = 1;
};

struct BudgetSummary {
  double budget = 0.0;
  double median = 0.0;
  double sd = 0.0;
  Interval ci95;
};

struct TechniqueResult {
  Technique technique;
  std::vector<std::vector<double>> kill_fractions;  // [repetition][budget index]
  std::vector<double> apfd;                         // [repetition]
  std::vector<BudgetSummary> summary;               // [budget index]
  double apfd_median = 0.0;
  double apfd_sd = 0.0;
};

/// One pairwise kill-fraction comparison at one budget.
struct Comparison {
  double budget = 0.0;
  Technique a;
  Technique b;
  double u = 0.0;
  double p = 1.0;
  double adjusted_p = 1.0;
  bool reject = false;
  bool exact = false;
  bool degenerate = false;  // every sample identical; reported as p = 1
};

struct EvaluationReport {
  ExperimentConfig config;
  std::size_t num_tests = 0;
  std::size_t num_mutants = 0;
  std::string provenance;
  std::string compressor;
  std::vector<TechniqueResult> techniques;
  std::vector<Comparison> comparisons;
  std::vector<std::string> notes;

  const TechniqueResult* find(Technique t) const;
};

/// Runs every technique over `config.repetitions` random train/eval splits.
/// Behavioural distances see only the train columns; all scoring uses the
/// eval columns. `tom` must already be cleaned. `corpus` is required when an
/// artefact technique is requested and must name every test of `tom`.
EvaluationReport run_experiment(const OutcomeMatrix& tom, const ArtefactCorpus* corpus,
                                const ExperimentConfig& config);

std::string report_to_json(const EvaluationReport& report);

/// technique,repetition,budget,kill_fraction
std::string report_curves_csv(const EvaluationReport& report);

/// technique,budget,median,sd,apfd_median
std::string report_stats_csv(const EvaluationReport& report);

}  // namespace bdiv
