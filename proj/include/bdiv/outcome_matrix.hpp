#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bdiv {

/// Result of running one test against one mutant. Unknown covers time-outs and
/// pairs that were never executed; it only survives until cleaning.
enum class Outcome : std::uint8_t { Pass, Fail, Unknown };

/// Test outcome matrix: rows are tests, columns are mutants.
///
/// Row order is the canonical test order. Every algorithm downstream breaks
/// ties by this index, lower first.
class OutcomeMatrix {
 public:
  OutcomeMatrix() = default;

  /// Throws Error(DuplicateId) on repeated ids and Error(InvalidInput) when
  /// cells.size() != tests * mutants.
  OutcomeMatrix(std::vector<std::string> test_ids, std::vector<std::string> mutant_ids,
                std::vector<Outcome> cells, std::string provenance = {});

  std::size_t num_tests() const noexcept { return test_ids_.size(); }
  std::size_t num_mutants() const noexcept { return mutant_ids_.size(); }

  const std::vector<std::string>& test_ids() const noexcept { return test_ids_; }
  const std::vector<std::string>& mutant_ids() const noexcept { return mutant_ids_; }
  const std::string& provenance() const noexcept { return provenance_; }

  Outcome at(std::size_t test, std::size_t mutant) const {
    return cells_[test * mutant_ids_.size() + mutant];
  }

  std::span<const Outcome> row(std::size_t test) const {
    return {cells_.data() + test * mutant_ids_.size(), mutant_ids_.size()};
  }

  const std::vector<Outcome>& cells() const noexcept { return cells_; }

  /// Index of a test id, or npos.
  std::size_t test_index(const std::string& id) const;

  bool has_unknown() const;

  /// New matrix with the given rows/columns, in the order given.
  OutcomeMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                       std::string provenance) const;

  /// Compares ids and cells; provenance is descriptive only.
  friend bool operator==(const OutcomeMatrix& a, const OutcomeMatrix& b) {
    return a.test_ids_ == b.test_ids_ && a.mutant_ids_ == b.mutant_ids_ && a.cells_ == b.cells_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::string> test_ids_;
  std::vector<std::string> mutant_ids_;
  std::vector<Outcome> cells_;
  std::string provenance_;
};

struct OutcomeRecord {
  std::string test_id;
  std::string mutant_id;
  Outcome outcome;
};

/// Builds a matrix from sparse records; missing pairs become Unknown and ids
/// keep the order of first appearance. Repeating a pair with the same outcome
/// is allowed, with a different outcome it throws ConflictingRecord.
OutcomeMatrix build_tom(std::span<const OutcomeRecord> records);

/// Row-major list of every cell as a record.
std::vector<OutcomeRecord> flatten_tom(const OutcomeMatrix& tom);

struct DroppedId {
  std::string id;
  std::string reason;
};

struct CleaningReport {
  std::vector<DroppedId> dropped_mutants;
  std::vector<DroppedId> dropped_tests;
  std::size_t unknown_cells_resolved = 0;

  bool empty() const {
    return dropped_mutants.empty() && dropped_tests.empty() && unknown_cells_resolved == 0;
  }
};

inline constexpr const char* kReasonUnknown = "time-out/unknown";
inline constexpr const char* kReasonNeverKilled = "never-killed";
inline constexpr const char* kReasonAllUnknown = "all-unknown";

/// Removes tests with no known outcome, then mutants with any Unknown cell,
/// then mutants no test kills. Throws AllColumnsDropped if nothing is left.
std::pair<OutcomeMatrix, CleaningReport> clean_tom(const OutcomeMatrix& tom);

struct TomSplit {
  OutcomeMatrix train;
  OutcomeMatrix eval;
};

/// Random column partition. The train part receives floor(fraction * mutants)
/// columns; both parts keep the input's relative column order.
TomSplit split_tom(const OutcomeMatrix& tom, double train_fraction, std::uint64_t seed);

}  // namespace bdiv
