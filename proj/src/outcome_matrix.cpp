#include "bdiv/outcome_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "bdiv/error.hpp"
#include "bdiv/rng.hpp"

namespace bdiv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConflictingRecord: return "ConflictingRecord";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::AllColumnsDropped: return "AllColumnsDropped";
    case ErrorKind::TooFewMutants: return "TooFewMutants";
    case ErrorKind::MalformedXml: return "MalformedXml";
    case ErrorKind::MissingStatus: return "MissingStatus";
    case ErrorKind::RaggedRow: return "RaggedRow";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::BadCell: return "BadCell";
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::EmptyPayload: return "EmptyPayload";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::BothEmpty: return "BothEmpty";
    case ErrorKind::TooFewTests: return "TooFewTests";
    case ErrorKind::NoKillableMutants: return "NoKillableMutants";
    case ErrorKind::UncoveredMutant: return "UncoveredMutant";
    case ErrorKind::DegenerateSamples: return "DegenerateSamples";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

void require_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids.size());
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw Error(ErrorKind::DuplicateId, std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

}  // namespace

OutcomeMatrix::OutcomeMatrix(std::vector<std::string> test_ids, std::vector<std::string> mutant_ids,
                             std::vector<Outcome> cells, std::string provenance)
    : test_ids_(std::move(test_ids)),
      mutant_ids_(std::move(mutant_ids)),
      cells_(std::move(cells)),
      provenance_(std::move(provenance)) {
  require_unique(test_ids_, "test");
  require_unique(mutant_ids_, "mutant");
  if (cells_.size() != test_ids_.size() * mutant_ids_.size()) {
    throw Error(ErrorKind::InvalidInput, "cell count does not match matrix dimensions");
  }
}

std::size_t OutcomeMatrix::test_index(const std::string& id) const {
  auto it = std::find(test_ids_.begin(), test_ids_.end(), id);
  return it == test_ids_.end() ? npos : static_cast<std::size_t>(it - test_ids_.begin());
}

bool OutcomeMatrix::has_unknown() const {
  return std::find(cells_.begin(), cells_.end(), Outcome::Unknown) != cells_.end();
}

OutcomeMatrix OutcomeMatrix::select(std::span<const std::size_t> rows,
                                    std::span<const std::size_t> cols,
                                    std::string provenance) const {
  std::vector<std::string> tests;
  std::vector<std::string> mutants;
  tests.reserve(rows.size());
  mutants.reserve(cols.size());
  for (auto r : rows) tests.push_back(test_ids_.at(r));
  for (auto c : cols) mutants.push_back(mutant_ids_.at(c));
  std::vector<Outcome> cells;
  cells.reserve(rows.size() * cols.size());
  for (auto r : rows) {
    for (auto c : cols) cells.push_back(at(r, c));
  }
  return {std::move(tests), std::move(mutants), std::move(cells), std::move(provenance)};
}

OutcomeMatrix build_tom(std::span<const OutcomeRecord> records) {
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "no outcome records");

  std::vector<std::string> tests;
  std::vector<std::string> mutants;
  std::unordered_map<std::string, std::size_t> test_index;
  std::unordered_map<std::string, std::size_t> mutant_index;
  for (const auto& rec : records) {
    if (test_index.emplace(rec.test_id, tests.size()).second) tests.push_back(rec.test_id);
    if (mutant_index.emplace(rec.mutant_id, mutants.size()).second) mutants.push_back(rec.mutant_id);
  }

  std::vector<Outcome> cells(tests.size() * mutants.size(), Outcome::Unknown);
  std::vector<bool> assigned(cells.size(), false);
  for (const auto& rec : records) {
    const std::size_t k = test_index[rec.test_id] * mutants.size() + mutant_index[rec.mutant_id];
    if (assigned[k] && cells[k] != rec.outcome) {
      throw Error(ErrorKind::ConflictingRecord,
                  "conflicting outcomes for (" + rec.test_id + ", " + rec.mutant_id + ")");
    }
    cells[k] = rec.outcome;
    assigned[k] = true;
  }
  return {std::move(tests), std::move(mutants), std::move(cells), "records"};
}

std::vector<OutcomeRecord> flatten_tom(const OutcomeMatrix& tom) {
  std::vector<OutcomeRecord> out;
  out.reserve(tom.cells().size());
  for (std::size_t t = 0; t < tom.num_tests(); ++t) {
    for (std::size_t m = 0; m < tom.num_mutants(); ++m) {
      out.push_back({tom.test_ids()[t], tom.mutant_ids()[m], tom.at(t, m)});
    }
  }
  return out;
}

std::pair<OutcomeMatrix, CleaningReport> clean_tom(const OutcomeMatrix& tom) {
  CleaningReport report;

  // A test with no known outcome at all would otherwise wipe out every column.
  std::vector<std::size_t> rows;
  for (std::size_t t = 0; t < tom.num_tests(); ++t) {
    const auto r = tom.row(t);
    const bool all_unknown =
        tom.num_mutants() > 0 && std::all_of(r.begin(), r.end(), [](Outcome o) { return o == Outcome::Unknown; });
    if (all_unknown) {
      report.dropped_tests.push_back({tom.test_ids()[t], kReasonAllUnknown});
      report.unknown_cells_resolved += r.size();
    } else {
      rows.push_back(t);
    }
  }

  std::vector<std::size_t> cols;
  for (std::size_t m = 0; m < tom.num_mutants(); ++m) {
    std::size_t unknown = 0;
    std::size_t fails = 0;
    for (auto t : rows) {
      const Outcome o = tom.at(t, m);
      unknown += o == Outcome::Unknown;
      fails += o == Outcome::Fail;
    }
    if (unknown > 0) {
      report.dropped_mutants.push_back({tom.mutant_ids()[m], kReasonUnknown});
      report.unknown_cells_resolved += unknown;
    } else if (fails == 0) {
      report.dropped_mutants.push_back({tom.mutant_ids()[m], kReasonNeverKilled});
    } else {
      cols.push_back(m);
    }
  }

  if (cols.empty() || rows.empty()) {
    throw Error(ErrorKind::AllColumnsDropped, "no mutant survives cleaning");
  }
  return {tom.select(rows, cols, tom.provenance()), std::move(report)};
}

TomSplit split_tom(const OutcomeMatrix& tom, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "train fraction must lie in (0,1)");
  }
  const std::size_t cols = tom.num_mutants();
  // the small epsilon keeps products like 0.29 * 100 from flooring to 28
  const auto train_size = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(cols) + 1e-9));
  if (train_size < 1 || train_size >= cols) {
    throw Error(ErrorKind::TooFewMutants, "cannot split " + std::to_string(cols) + " mutants");
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_size));
  std::vector<std::size_t> eval(order.begin() + static_cast<std::ptrdiff_t>(train_size), order.end());
  std::sort(train.begin(), train.end());
  std::sort(eval.begin(), eval.end());

  std::vector<std::size_t> rows(tom.num_tests());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return {tom.select(rows, train, tom.provenance() + " [train]"),
          tom.select(rows, eval, tom.provenance() + " [eval]")};
}

}  // namespace bdiv
