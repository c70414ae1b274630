#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdiv/compressor.hpp"
#include "bdiv/ingest.hpp"
#include "bdiv/outcome_matrix.hpp"

namespace bdiv {

/// Pairwise agreement of two tests over the same mutants, Fail being the
/// positive class: tp both fail, tn both pass, fp only a fails, fn only b fails.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const Outcome> row_a, std::span<const Outcome> row_b);

/// 1 - (tp + tn) / total
double d_acc(const ConfusionCounts& c);

/// (1 - MCC) / 2. When a marginal is empty MCC is undefined: identical rows
/// are at distance 0, anything else is treated as uncorrelated (0.5).
double d_mcc(const ConfusionCounts& c, bool rows_identical);

double ncd(std::string_view x, std::string_view y, const Compressor& compressor);

/// Maximal runs of ASCII letters and digits.
std::vector<std::string> tokenize(std::string_view text);

double jaccard(std::span<const std::string> a, std::span<const std::string> b);

/// Edit distance over Unicode code points divided by the longer length.
double levenshtein_norm(std::string_view a, std::string_view b);

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

std::u32string utf8_to_code_points(std::string_view text);

/// Symmetric, zero-diagonal matrix of distances in [0,1].
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> ids, std::string measure);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& measure() const noexcept { return measure_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }

  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value) {
    values_[i * ids_.size() + j] = value;
    values_[j * ids_.size() + i] = value;
  }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * ids_.size(), ids_.size()}; }

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::string measure_;
};

enum class BehaviouralMeasure { Accuracy, Mcc };
enum class ArtefactMeasure { Ncd, Jaccard, Levenshtein };

const char* measure_name(BehaviouralMeasure m);
const char* measure_name(ArtefactMeasure m);

DistanceMatrix behavioural_matrix(const OutcomeMatrix& tom, BehaviouralMeasure measure, unsigned jobs = 1);

/// `compressor` is only consulted for NCD; nullptr selects DEFLATE level 9.
DistanceMatrix artefact_matrix(const ArtefactCorpus& corpus, ArtefactMeasure measure,
                               const Compressor* compressor = nullptr, unsigned jobs = 1);

/// `id,<ids>` header, one row per id, values with 6 fractional digits.
std::string write_distance_csv(const DistanceMatrix& dm);

/// Inverse of write_distance_csv. Rejects non-square, asymmetric or
/// out-of-range input with InvalidInput.
DistanceMatrix parse_distance_csv(std::string_view text, std::string measure = "csv");

}  // namespace bdiv
