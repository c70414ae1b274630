#include "bdiv/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <unordered_map>

#include "bdiv/distance.hpp"
#include "bdiv/error.hpp"
#include "bdiv/parallel.hpp"
#include "bdiv/rng.hpp"

namespace bdiv {

namespace {

// Positions (in test-row space of `tom`) of the ordering's ids.
std::vector<std::size_t> resolve(const Ordering& ordering, const OutcomeMatrix& tom) {
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(tom.num_tests());
  for (std::size_t t = 0; t < tom.num_tests(); ++t) index.emplace(tom.test_ids()[t], t);
  std::vector<std::size_t> rows;
  rows.reserve(ordering.ids.size());
  for (const auto& id : ordering.ids) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::InvalidInput, "ordering names unknown test '" + id + "'");
    rows.push_back(it->second);
  }
  if (rows.size() != tom.num_tests()) {
    throw Error(ErrorKind::InvalidInput, "ordering does not cover every test of the matrix");
  }
  return rows;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_budget(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

double kills_at_budget(const Ordering& ordering, const OutcomeMatrix& eval_tom, double budget_percent) {
  if (!(budget_percent > 0.0 && budget_percent <= 100.0)) {
    throw Error(ErrorKind::InvalidInput, "budget must lie in (0,100]");
  }
  const auto rows = resolve(ordering, eval_tom);
  const std::size_t n = rows.size();
  const std::size_t m = eval_tom.num_mutants();
  const auto prefix = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(budget_percent * static_cast<double>(n) / 100.0 + 1e-9)));

  std::size_t killable = 0;
  std::size_t killed = 0;
  for (std::size_t c = 0; c < m; ++c) {
    bool any = false;
    bool early = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (eval_tom.at(rows[k], c) == Outcome::Fail) {
        any = true;
        early = k < prefix;
        break;
      }
    }
    killable += any;
    killed += early;
  }
  if (killable == 0) throw Error(ErrorKind::NoKillableMutants, "no eval mutant is killed by any test");
  return static_cast<double>(killed) / static_cast<double>(killable);
}

double apfd(const Ordering& ordering, const OutcomeMatrix& eval_tom) {
  const auto rows = resolve(ordering, eval_tom);
  const std::size_t n = rows.size();
  const std::size_t m = eval_tom.num_mutants();
  if (n == 0 || m == 0) throw Error(ErrorKind::EmptyInput, "APFD of an empty matrix");
  double position_sum = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t first = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (eval_tom.at(rows[k], c) == Outcome::Fail) {
        first = k + 1;
        break;
      }
    }
    if (first == 0) throw Error(ErrorKind::UncoveredMutant, "mutant '" + eval_tom.mutant_ids()[c] + "' is never killed");
    position_sum += static_cast<double>(first);
  }
  const double nd = static_cast<double>(n);
  return 1.0 - position_sum / (nd * static_cast<double>(m)) + 1.0 / (2.0 * nd);
}

std::string_view technique_name(Technique t) {
  switch (t) {
    case Technique::Accuracy: return "acc";
    case Technique::Mcc: return "mcc";
    case Technique::Ncd: return "ncd";
    case Technique::Jaccard: return "jaccard";
    case Technique::Levenshtein: return "levenshtein";
    case Technique::Random: return "random";
    case Technique::GreedyBest: return "greedy-best";
  }
  return "?";
}

std::optional<Technique> parse_technique(std::string_view name) {
  for (auto t : {Technique::Accuracy, Technique::Mcc, Technique::Ncd, Technique::Jaccard, Technique::Levenshtein,
                 Technique::Random, Technique::GreedyBest}) {
    if (technique_name(t) == name) return t;
  }
  return std::nullopt;
}

bool is_artefact(Technique t) {
  return t == Technique::Ncd || t == Technique::Jaccard || t == Technique::Levenshtein;
}

std::vector<double> default_budgets() { return {1, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100}; }

const TechniqueResult* EvaluationReport::find(Technique t) const {
  for (const auto& r : techniques) {
    if (r.technique == t) return &r;
  }
  return nullptr;
}

EvaluationReport run_experiment(const OutcomeMatrix& tom, const ArtefactCorpus* corpus,
                                const ExperimentConfig& config) {
  if (config.techniques.empty()) throw Error(ErrorKind::InvalidInput, "no techniques selected");
  if (config.repetitions == 0) throw Error(ErrorKind::InvalidInput, "repetitions must be positive");
  if (config.budgets.empty()) throw Error(ErrorKind::InvalidInput, "no budgets selected");
  for (double b : config.budgets) {
    if (!(b > 0.0 && b <= 100.0)) throw Error(ErrorKind::InvalidInput, "budget " + format_budget(b) + " outside (0,100]");
  }
  for (std::size_t i = 0; i < config.techniques.size(); ++i) {
    for (std::size_t j = i + 1; j < config.techniques.size(); ++j) {
      if (config.techniques[i] == config.techniques[j]) throw Error(ErrorKind::InvalidInput, "technique listed twice");
    }
  }
  if (tom.has_unknown()) throw Error(ErrorKind::UnknownCell, "experiment needs a cleaned matrix");
  if (tom.num_tests() < 2) throw Error(ErrorKind::TooFewTests, "experiment needs at least two tests");

  const bool needs_corpus = std::any_of(config.techniques.begin(), config.techniques.end(), is_artefact);
  if (needs_corpus && corpus == nullptr) {
    throw Error(ErrorKind::InvalidInput, "artefact technique selected without a corpus");
  }

  // Artefact distances do not depend on the mutants, so each artefact
  // ordering is computed once, over the corpus restricted to the matrix's
  // tests in canonical order.
  DeflateCompressor compressor;
  std::unordered_map<Technique, Ordering> fixed_orderings;
  if (needs_corpus) {
    std::unordered_map<std::string_view, const std::string*> payloads;
    for (const auto& [id, text] : corpus->entries) payloads.emplace(id, &text);
    ArtefactCorpus aligned;
    for (const auto& id : tom.test_ids()) {
      auto it = payloads.find(id);
      if (it == payloads.end()) throw Error(ErrorKind::MissingFile, "corpus has no entry for test '" + id + "'");
      aligned.entries.emplace_back(id, *it->second);
    }
    for (auto t : config.techniques) {
      if (!is_artefact(t)) continue;
      const auto measure = t == Technique::Ncd       ? ArtefactMeasure::Ncd
                           : t == Technique::Jaccard ? ArtefactMeasure::Jaccard
                                                     : ArtefactMeasure::Levenshtein;
      auto ordering = rank_max_mean(artefact_matrix(aligned, measure, &compressor, config.jobs));
      ordering.technique = std::string(technique_name(t));
      fixed_orderings.emplace(t, std::move(ordering));
    }
  }

  const std::size_t reps = config.repetitions;
  const std::size_t nb = config.budgets.size();
  const std::size_t nt = config.techniques.size();

  struct RepResult {
    std::vector<std::vector<double>> kills;  // [technique][budget]
    std::vector<double> apfd;                // [technique]
  };
  std::vector<RepResult> per_rep(reps);

  detail::parallel_for(reps, config.jobs, [&](std::size_t r) {
    const auto split = split_tom(tom, config.split, config.base_seed + r);
    RepResult& out = per_rep[r];
    out.kills.assign(nt, std::vector<double>(nb, 0.0));
    out.apfd.assign(nt, 0.0);
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const Technique t = config.techniques[ti];
      Ordering ordering;
      switch (t) {
        case Technique::Accuracy:
          ordering = rank_max_mean(behavioural_matrix(split.train, BehaviouralMeasure::Accuracy));
          break;
        case Technique::Mcc:
          ordering = rank_max_mean(behavioural_matrix(split.train, BehaviouralMeasure::Mcc));
          break;
        case Technique::Random:
          ordering = rank_random(tom.test_ids(), config.base_seed + r + stable_hash(technique_name(t)));
          break;
        case Technique::GreedyBest:
          ordering = rank_greedy_best(split.eval);
          break;
        default:
          ordering = fixed_orderings.at(t);
          break;
      }
      for (std::size_t bi = 0; bi < nb; ++bi) out.kills[ti][bi] = kills_at_budget(ordering, split.eval, config.budgets[bi]);
      out.apfd[ti] = apfd(ordering, split.eval);
    }
  });

  EvaluationReport report;
  report.config = config;
  report.num_tests = tom.num_tests();
  report.num_mutants = tom.num_mutants();
  report.provenance = tom.provenance();
  report.compressor = needs_corpus ? compressor.name() : "";

  for (std::size_t ti = 0; ti < nt; ++ti) {
    TechniqueResult res;
    res.technique = config.techniques[ti];
    for (std::size_t r = 0; r < reps; ++r) {
      res.kill_fractions.push_back(per_rep[r].kills[ti]);
      res.apfd.push_back(per_rep[r].apfd[ti]);
    }
    for (std::size_t bi = 0; bi < nb; ++bi) {
      std::vector<double> column;
      for (std::size_t r = 0; r < reps; ++r) column.push_back(res.kill_fractions[r][bi]);
      const auto seed = config.base_seed ^ stable_hash(technique_name(res.technique)) ^ (bi * 0x9e3779b97f4a7c15ULL);
      res.summary.push_back({config.budgets[bi], median(column), standard_deviation(column),
                             bootstrap_median_ci(column, 0.95, config.bootstrap_resamples, seed)});
    }
    res.apfd_median = median(res.apfd);
    res.apfd_sd = standard_deviation(res.apfd);
    report.techniques.push_back(std::move(res));
  }

  // greedy-best is a reference curve, not one of the compared techniques
  std::vector<std::size_t> compared;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    if (config.techniques[ti] != Technique::GreedyBest) compared.push_back(ti);
  }
  for (std::size_t bi = 0; bi < nb; ++bi) {
    std::vector<Comparison> family;
    for (std::size_t x = 0; x < compared.size(); ++x) {
      for (std::size_t y = x + 1; y < compared.size(); ++y) {
        const auto& ra = report.techniques[compared[x]];
        const auto& rb = report.techniques[compared[y]];
        std::vector<double> sa, sb;
        for (std::size_t r = 0; r < reps; ++r) {
          sa.push_back(ra.kill_fractions[r][bi]);
          sb.push_back(rb.kill_fractions[r][bi]);
        }
        Comparison c;
        c.budget = config.budgets[bi];
        c.a = ra.technique;
        c.b = rb.technique;
        try {
          const auto mw = mann_whitney_u(sa, sb);
          c.u = mw.u;
          c.p = mw.p;
          c.exact = mw.exact;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateSamples) throw;
          c.u = static_cast<double>(reps * reps) / 2.0;
          c.p = 1.0;
          c.degenerate = true;
        }
        family.push_back(c);
      }
    }
    std::vector<double> ps;
    for (const auto& c : family) ps.push_back(c.p);
    const auto decisions = holm_bonferroni(ps, config.alpha);
    for (std::size_t k = 0; k < family.size(); ++k) {
      family[k].adjusted_p = decisions[k].adjusted_p;
      family[k].reject = decisions[k].reject;
      report.comparisons.push_back(family[k]);
    }
  }

  report.notes.push_back(
      "pairwise Mann-Whitney tests compare per-budget kill fractions; Holm-Bonferroni is applied within each budget");
  report.notes.push_back("greedy-best uses full fault knowledge of the eval split and is excluded from comparisons");
  if (needs_corpus) {
    report.notes.push_back(
        "artefact orderings are fixed across repetitions; their SD reflects variation of the eval split only");
  }
  return report;
}

std::string report_to_json(const EvaluationReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  const auto& cfg = report.config;
  json techniques = json::array();
  for (auto t : cfg.techniques) techniques.push_back(technique_name(t));
  j["config"] = {{"base_seed", cfg.base_seed},
                 {"split", cfg.split},
                 {"repetitions", cfg.repetitions},
                 {"budgets", cfg.budgets},
                 {"techniques", techniques},
                 {"alpha", cfg.alpha},
                 {"bootstrap_resamples", cfg.bootstrap_resamples},
                 {"split_seeds", "base_seed + repetition"},
                 {"random_seeds", "base_seed + repetition + fnv1a64(technique)"}};
  j["input"] = {{"tests", report.num_tests}, {"mutants", report.num_mutants}, {"provenance", report.provenance}};
  if (!report.compressor.empty()) j["input"]["compressor"] = report.compressor;

  json results = json::array();
  for (const auto& r : report.techniques) {
    json budgets = json::array();
    for (const auto& s : r.summary) {
      budgets.push_back({{"budget", s.budget},
                         {"median", s.median},
                         {"sd", s.sd},
                         {"ci95", {s.ci95.lo, s.ci95.hi}}});
    }
    results.push_back({{"technique", technique_name(r.technique)},
                       {"budgets", budgets},
                       {"kill_fractions", r.kill_fractions},
                       {"apfd", r.apfd},
                       {"apfd_median", r.apfd_median},
                       {"apfd_sd", r.apfd_sd}});
  }
  j["techniques"] = results;

  json comparisons = json::array();
  for (const auto& c : report.comparisons) {
    comparisons.push_back({{"budget", c.budget},
                           {"a", technique_name(c.a)},
                           {"b", technique_name(c.b)},
                           {"u", c.u},
                           {"p", c.p},
                           {"adjusted_p", c.adjusted_p},
                           {"reject", c.reject},
                           {"exact", c.exact},
                           {"degenerate", c.degenerate}});
  }
  j["comparisons"] = comparisons;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string report_curves_csv(const EvaluationReport& report) {
  std::string out = "technique,repetition,budget,kill_fraction\n";
  for (const auto& r : report.techniques) {
    for (std::size_t rep = 0; rep < r.kill_fractions.size(); ++rep) {
      for (std::size_t bi = 0; bi < report.config.budgets.size(); ++bi) {
        out += std::string(technique_name(r.technique)) + "," + std::to_string(rep) + "," +
               format_budget(report.config.budgets[bi]) + "," + format_number(r.kill_fractions[rep][bi]) + "\n";
      }
    }
  }
  return out;
}

std::string report_stats_csv(const EvaluationReport& report) {
  std::string out = "technique,budget,median,sd,apfd_median\n";
  for (const auto& r : report.techniques) {
    for (const auto& s : r.summary) {
      out += std::string(technique_name(r.technique)) + "," + format_budget(s.budget) + "," + format_number(s.median) +
             "," + format_number(s.sd) + "," + format_number(r.apfd_median) + "\n";
    }
  }
  return out;
}

}  // namespace bdiv
