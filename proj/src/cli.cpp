#include "bdiv/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "bdiv/distance.hpp"
#include "bdiv/error.hpp"
#include "bdiv/evaluate.hpp"
#include "bdiv/ingest.hpp"
#include "bdiv/prioritise.hpp"
#include "bdiv/synthgen.hpp"

namespace bdiv {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AllColumnsDropped:
    case ErrorKind::NoKillableMutants:
    case ErrorKind::TooFewMutants:
    case ErrorKind::DegenerateSamples:
    case ErrorKind::EmptyInput:
      return kExitDegenerate;
    default:
      return kExitUsage;
  }
}

struct Options {
  std::string input;
  std::string out;
  std::string measure;
  std::vector<std::string> techniques;
  std::string corpus;
  std::uint64_t seed = kDefaultSeed;
  double split = 0.8;
  std::size_t reps = 20;
  std::vector<double> budgets = default_budgets();
  unsigned jobs = 1;
  bool force = false;
};

void ensure_writable(const fs::path& path, bool force) {
  if (fs::exists(path) && !force) throw UsageError("'" + path.string() + "' exists; pass --force to overwrite");
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw UsageError("failed writing '" + path.string() + "'");
}

fs::path sibling(const fs::path& path, const std::string& suffix) { return fs::path(path.string() + suffix); }

ArtefactCorpus load_corpus(const std::string& manifest_path) {
  const fs::path p(manifest_path);
  return load_artefact_corpus(parse_manifest_csv(read_file(p), p.parent_path()));
}

OutcomeMatrix load_clean_tom(const std::string& path, std::ostream& err) {
  auto [tom, report] = clean_tom(parse_tom_csv(read_file(path)));
  if (!report.empty()) {
    err << "note: cleaning dropped " << report.dropped_mutants.size() << " mutant(s) and "
        << report.dropped_tests.size() << " test(s)\n";
  }
  return tom;
}

std::optional<ArtefactMeasure> artefact_measure(std::string_view name) {
  if (name == "ncd") return ArtefactMeasure::Ncd;
  if (name == "jaccard") return ArtefactMeasure::Jaccard;
  if (name == "levenshtein") return ArtefactMeasure::Levenshtein;
  return std::nullopt;
}

std::optional<BehaviouralMeasure> behavioural_measure(std::string_view name) {
  if (name == "acc") return BehaviouralMeasure::Accuracy;
  if (name == "mcc") return BehaviouralMeasure::Mcc;
  return std::nullopt;
}

std::string cleaning_report_json(const CleaningReport& report) {
  nlohmann::ordered_json j;
  auto list = [](const std::vector<DroppedId>& ids) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : ids) arr.push_back({{"id", d.id}, {"reason", d.reason}});
    return arr;
  };
  j["dropped_mutants"] = list(report.dropped_mutants);
  j["dropped_tests"] = list(report.dropped_tests);
  j["unknown_cells_resolved"] = report.unknown_cells_resolved;
  return j.dump(2) + "\n";
}

int cmd_convert(const Options& o, std::ostream& out) {
  const fs::path csv(o.out);
  const fs::path report_path = sibling(csv, ".cleaning.json");
  ensure_writable(csv, o.force);
  ensure_writable(report_path, o.force);

  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot read '" + o.input + "'");
  const auto [tom, report] = clean_tom(records_to_tom(parse_pit_xml(in)));
  write_text(csv, write_tom_csv(tom));
  write_text(report_path, cleaning_report_json(report));
  out << "wrote " << tom.num_tests() << "x" << tom.num_mutants() << " matrix to " << csv.string() << "\n";
  return kExitOk;
}

int cmd_distances(const Options& o, std::ostream& out, std::ostream& err) {
  ensure_writable(o.out, o.force);
  DistanceMatrix dm;
  if (auto b = behavioural_measure(o.measure)) {
    dm = behavioural_matrix(load_clean_tom(o.input, err), *b, o.jobs);
  } else if (auto a = artefact_measure(o.measure)) {
    dm = artefact_matrix(load_corpus(o.input), *a, nullptr, o.jobs);
  } else {
    throw UsageError("unknown measure '" + o.measure + "'");
  }
  write_text(o.out, write_distance_csv(dm));
  out << "wrote " << dm.size() << "x" << dm.size() << " " << dm.measure() << " matrix to " << o.out << "\n";
  return kExitOk;
}

int cmd_prioritise(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.techniques.size() != 1) throw UsageError("prioritise takes exactly one --technique");
  const std::string& technique = o.techniques.front();
  const fs::path order_path(o.out);
  const fs::path sidecar = sibling(order_path, ".json");

  Ordering ordering;
  if (technique == "max-mean") {
    ordering = rank_max_mean(parse_distance_csv(read_file(o.input)));
  } else if (auto b = behavioural_measure(technique)) {
    ordering = rank_max_mean(behavioural_matrix(load_clean_tom(o.input, err), *b, o.jobs));
  } else if (auto a = artefact_measure(technique)) {
    ordering = rank_max_mean(artefact_matrix(load_corpus(o.input), *a, nullptr, o.jobs));
  } else if (technique == "greedy-best") {
    ordering = rank_greedy_best(load_clean_tom(o.input, err));
  } else if (technique == "random") {
    const auto text = read_file(o.input);
    const auto ids = text.starts_with("id,") ? parse_distance_csv(text).ids() : parse_tom_csv(text).test_ids();
    ordering = rank_random(ids, o.seed);
  } else {
    throw UsageError("unknown technique '" + technique + "'");
  }

  ensure_writable(order_path, o.force);
  ensure_writable(sidecar, o.force);
  write_text(order_path, write_ordering(ordering));
  write_text(sidecar, write_ordering_sidecar(ordering, fs::path(o.input).filename().string()));
  out << "wrote " << ordering.ids.size() << " ids to " << order_path.string() << "\n";
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.split = o.split;
  cfg.repetitions = o.reps;
  cfg.budgets = o.budgets;
  cfg.base_seed = o.seed;
  cfg.jobs = o.jobs;
  if (!o.techniques.empty()) {
    cfg.techniques.clear();
    for (const auto& name : o.techniques) {
      auto t = parse_technique(name);
      if (!t) throw UsageError("unknown technique '" + name + "'");
      cfg.techniques.push_back(*t);
    }
  }
  const bool needs_corpus = std::any_of(cfg.techniques.begin(), cfg.techniques.end(), is_artefact);
  if (needs_corpus && o.corpus.empty()) throw UsageError("artefact techniques need --corpus");

  const fs::path dir(o.out);
  const fs::path json_path = dir / "report.json";
  const fs::path curves_path = dir / "curves.csv";
  const fs::path stats_path = dir / "stats.csv";
  for (const auto& p : {json_path, curves_path, stats_path}) ensure_writable(p, o.force);

  const auto tom = load_clean_tom(o.input, err);
  std::optional<ArtefactCorpus> corpus;
  if (needs_corpus) corpus = load_corpus(o.corpus);

  const auto report = run_experiment(tom, corpus ? &*corpus : nullptr, cfg);
  write_text(json_path, report_to_json(report));
  write_text(curves_path, report_curves_csv(report));
  write_text(stats_path, report_stats_csv(report));
  out << "wrote report for " << report.techniques.size() << " technique(s) to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out) {
  const fs::path csv(o.out);
  const fs::path truth = sibling(csv, ".clusters.csv");
  ensure_writable(csv, o.force);
  ensure_writable(truth, o.force);
  const auto synth = generate_tom(synth_params_from_json(read_file(o.input)));
  write_text(csv, write_tom_csv(synth.tom));
  write_text(truth, write_ground_truth_csv(synth));
  out << "wrote " << synth.tom.num_tests() << "x" << synth.tom.num_mutants() << " matrix to " << csv.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Behavioural test diversity from mutation outcome matrices"};
  app.name("bdiv");
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output path")->required();
    sub->add_flag("--force", o.force, "overwrite existing outputs");
  };

  auto* convert = app.add_subcommand("convert", "PIT mutations XML -> cleaned TOM CSV");
  convert->add_option("input", o.input, "mutations.xml")->required();
  add_common(convert);

  auto* distances = app.add_subcommand("distances", "TOM CSV or corpus manifest -> distance matrix CSV");
  distances->add_option("input", o.input, "TOM CSV (acc, mcc) or manifest CSV (ncd, jaccard, levenshtein)")
      ->required();
  distances->add_option("--measure", o.measure, "acc | mcc | ncd | jaccard | levenshtein")->required();
  distances->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(distances);

  auto* prioritise = app.add_subcommand("prioritise", "produce a test ordering");
  prioritise->add_option("input", o.input, "distance CSV, TOM CSV or manifest depending on technique")->required();
  prioritise->add_option("--technique", o.techniques,
                         "max-mean | acc | mcc | ncd | jaccard | levenshtein | random | greedy-best")
      ->required();
  prioritise->add_option("--seed", o.seed, "seed for random ordering");
  prioritise->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(prioritise);

  auto* evaluate = app.add_subcommand("evaluate", "repeated split experiment over techniques");
  evaluate->add_option("input", o.input, "TOM CSV")->required();
  evaluate->add_option("--corpus", o.corpus, "manifest CSV for artefact techniques");
  evaluate->add_option("--technique", o.techniques, "techniques (comma separated)")->delimiter(',');
  evaluate->add_option("--seed", o.seed, "base seed");
  evaluate->add_option("--split", o.split, "train fraction")->check(CLI::Range(0.0, 1.0));
  evaluate->add_option("--reps", o.reps, "repetitions")->check(CLI::PositiveNumber);
  evaluate->add_option("--budgets", o.budgets, "budget percentages (comma separated)")->delimiter(',');
  evaluate->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(evaluate);

  auto* synth = app.add_subcommand("synth", "generate a planted-cluster TOM");
  synth->add_option("params", o.input, "parameters JSON")->required();
  add_common(synth);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (convert->parsed()) return cmd_convert(o, out);
    if (distances->parsed()) return cmd_distances(o, out, err);
    if (prioritise->parsed()) return cmd_prioritise(o, out, err);
    if (evaluate->parsed()) return cmd_evaluate(o, out, err);
    if (synth->parsed()) return cmd_synth(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e.kind());
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bdiv
