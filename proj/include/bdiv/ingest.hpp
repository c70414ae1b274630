#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdiv/outcome_matrix.hpp"

namespace bdiv {

enum class MutantStatus { Killed, Survived, TimedOut, NoCoverage, Other };

/// One <mutation> element of a PIT-style mutations report.
struct MutantRecord {
  std::string mutant_id;  // mutatedClass:lineNumber:mutator:ordinal
  MutantStatus status = MutantStatus::Other;
  std::string raw_status;  // attribute text, kept for Other
  std::vector<std::string> killing_tests;
  std::vector<std::string> succeeding_tests;
  std::map<std::string, std::string> metadata;  // sourceFile, mutatedClass, ...
};

MutantStatus parse_mutant_status(std::string_view text);

/// Reads a `<mutations>` document. Test lists may be separated by '|' or ','.
/// Throws MalformedXml / MissingStatus.
std::vector<MutantRecord> parse_pit_xml(std::istream& document);
std::vector<MutantRecord> parse_pit_xml(std::string_view document);

/// Fail where the test killed the mutant, Pass where it is listed as
/// succeeding, Unknown everywhere else (and for every cell of a timed-out
/// mutant). Tests appear in order of first mention.
OutcomeMatrix records_to_tom(const std::vector<MutantRecord>& records);

/// Canonical CSV: `test_id,<mutant ids>` header, then one row per test with
/// cells 0 (Pass), 1 (Fail) or X (Unknown). '\n' line endings.
OutcomeMatrix parse_tom_csv(std::string_view text);
std::string write_tom_csv(const OutcomeMatrix& tom);

/// test id -> test source text.
struct ArtefactCorpus {
  std::vector<std::pair<std::string, std::string>> entries;  // manifest order

  std::size_t size() const noexcept { return entries.size(); }
};

using Manifest = std::vector<std::pair<std::string, std::filesystem::path>>;

/// `test_id,path` rows, optional `test_id,path` header. Relative paths are
/// resolved against base_dir.
Manifest parse_manifest_csv(std::string_view text, const std::filesystem::path& base_dir);

/// Reads every file of the manifest as UTF-8 (invalid sequences become
/// U+FFFD). Throws MissingFile / EmptyPayload / DuplicateId.
ArtefactCorpus load_artefact_corpus(const Manifest& manifest);

std::string decode_utf8_lossy(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace bdiv
