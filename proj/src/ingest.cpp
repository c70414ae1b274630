#include "bdiv/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "bdiv/error.hpp"

namespace bdiv {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_test_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '|' || text[i] == ',') {
      auto item = trim(text.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

// Splits on '\n'; a single trailing newline does not produce an empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace

MutantStatus parse_mutant_status(std::string_view text) {
  if (text == "KILLED") return MutantStatus::Killed;
  if (text == "SURVIVED") return MutantStatus::Survived;
  if (text == "TIMED_OUT") return MutantStatus::TimedOut;
  if (text == "NO_COVERAGE") return MutantStatus::NoCoverage;
  return MutantStatus::Other;
}

std::vector<MutantRecord> parse_pit_xml(std::istream& document) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(document, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorKind::MalformedXml, e.what());
  }

  const auto root = tree.get_child_optional("mutations");
  if (!root) throw Error(ErrorKind::MalformedXml, "missing <mutations> root element");

  static const char* const kMetadataFields[] = {"sourceFile", "mutatedClass", "mutatedMethod", "lineNumber",
                                                "mutator"};

  std::vector<MutantRecord> records;
  std::unordered_map<std::string, std::size_t> ordinals;
  for (const auto& [name, node] : *root) {
    if (name != "mutation") continue;
    MutantRecord rec;
    const auto status = node.get_optional<std::string>("<xmlattr>.status");
    if (!status) {
      throw Error(ErrorKind::MissingStatus, "mutation #" + std::to_string(records.size()) + " has no status");
    }
    rec.raw_status = std::string(trim(*status));
    rec.status = parse_mutant_status(rec.raw_status);

    for (const char* field : kMetadataFields) {
      if (auto value = node.get_optional<std::string>(field)) rec.metadata[field] = std::string(trim(*value));
    }
    rec.killing_tests = split_test_list(node.get<std::string>("killingTests", ""));
    rec.succeeding_tests = split_test_list(node.get<std::string>("succeedingTests", ""));

    std::unordered_set<std::string_view> killing(rec.killing_tests.begin(), rec.killing_tests.end());
    for (const auto& t : rec.succeeding_tests) {
      if (killing.contains(t)) {
        throw Error(ErrorKind::MalformedXml, "test '" + t + "' both kills and survives the same mutant");
      }
    }

    std::string key = rec.metadata["mutatedClass"] + ":" + rec.metadata["lineNumber"] + ":" + rec.metadata["mutator"];
    rec.mutant_id = key + ":" + std::to_string(ordinals[key]++);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<MutantRecord> parse_pit_xml(std::string_view document) {
  std::istringstream in{std::string(document)};
  return parse_pit_xml(in);
}

OutcomeMatrix records_to_tom(const std::vector<MutantRecord>& records) {
  std::vector<std::string> tests;
  std::unordered_map<std::string, std::size_t> test_index;
  auto note = [&](const std::string& t) {
    if (test_index.emplace(t, tests.size()).second) tests.push_back(t);
  };
  for (const auto& rec : records) {
    for (const auto& t : rec.killing_tests) note(t);
    for (const auto& t : rec.succeeding_tests) note(t);
  }
  if (records.empty() || tests.empty()) throw Error(ErrorKind::EmptyInput, "report names no tests or mutants");

  const std::size_t cols = records.size();
  std::vector<std::string> mutants;
  mutants.reserve(cols);
  std::vector<Outcome> cells(tests.size() * cols, Outcome::Unknown);
  for (std::size_t m = 0; m < cols; ++m) {
    const auto& rec = records[m];
    mutants.push_back(rec.mutant_id);
    if (rec.status == MutantStatus::TimedOut) continue;
    for (const auto& t : rec.killing_tests) cells[test_index[t] * cols + m] = Outcome::Fail;
    for (const auto& t : rec.succeeding_tests) cells[test_index[t] * cols + m] = Outcome::Pass;
  }
  return {std::move(tests), std::move(mutants), std::move(cells), "pit-xml"};
}

OutcomeMatrix parse_tom_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::EmptyInput, "empty TOM CSV");

  const auto header = split_fields(lines[0]);
  if (header.empty() || header[0] != "test_id") {
    throw Error(ErrorKind::InvalidInput, "TOM CSV header must start with 'test_id'");
  }
  std::vector<std::string> mutants(header.begin() + 1, header.end());
  if (mutants.empty() || lines.size() < 2) throw Error(ErrorKind::EmptyInput, "TOM CSV has no cells");

  std::vector<std::string> tests;
  std::vector<Outcome> cells;
  cells.reserve((lines.size() - 1) * mutants.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::RaggedRow, "line " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
                                            " fields, header has " + std::to_string(header.size()));
    }
    tests.emplace_back(fields[0]);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto cell = fields[f];
      if (cell == "0") {
        cells.push_back(Outcome::Pass);
      } else if (cell == "1") {
        cells.push_back(Outcome::Fail);
      } else if (cell == "X") {
        cells.push_back(Outcome::Unknown);
      } else {
        throw Error(ErrorKind::BadCell, "line " + std::to_string(i + 1) + ": bad cell '" + std::string(cell) + "'");
      }
    }
  }
  return {std::move(tests), std::move(mutants), std::move(cells), "csv"};
}

std::string write_tom_csv(const OutcomeMatrix& tom) {
  auto check_id = [](const std::string& id) {
    if (id.empty() || id.find_first_of(",\n") != std::string::npos) {
      throw Error(ErrorKind::InvalidInput, "id '" + id + "' cannot be written to CSV");
    }
  };
  std::string out = "test_id";
  for (const auto& m : tom.mutant_ids()) {
    check_id(m);
    out += ',';
    out += m;
  }
  out += '\n';
  for (std::size_t t = 0; t < tom.num_tests(); ++t) {
    check_id(tom.test_ids()[t]);
    out += tom.test_ids()[t];
    for (Outcome o : tom.row(t)) {
      out += ',';
      out += o == Outcome::Pass ? '0' : o == Outcome::Fail ? '1' : 'X';
    }
    out += '\n';
  }
  return out;
}

Manifest parse_manifest_csv(std::string_view text, const std::filesystem::path& base_dir) {
  Manifest manifest;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorKind::RaggedRow, "manifest line " + std::to_string(i + 1) + " lacks a path");
    }
    auto id = trim(line.substr(0, comma));
    auto path = trim(line.substr(comma + 1));
    if (i == 0 && id == "test_id" && path == "path") continue;
    std::filesystem::path p{std::string(path)};
    manifest.emplace_back(std::string(id), p.is_absolute() ? p : base_dir / p);
  }
  return manifest;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ArtefactCorpus load_artefact_corpus(const Manifest& manifest) {
  ArtefactCorpus corpus;
  std::unordered_set<std::string> seen;
  for (const auto& [id, path] : manifest) {
    if (!seen.insert(id).second) throw Error(ErrorKind::DuplicateId, "duplicate test id '" + id + "' in manifest");
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      throw Error(ErrorKind::MissingFile, "test '" + id + "': no file at '" + path.string() + "'");
    }
    auto payload = decode_utf8_lossy(read_file(path));
    if (payload.empty()) throw Error(ErrorKind::EmptyPayload, "test '" + id + "': empty file");
    corpus.entries.emplace_back(id, std::move(payload));
  }
  return corpus;
}

std::string decode_utf8_lossy(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    std::size_t len = 0;
    unsigned char lo = 0x80, hi = 0xBF;  // allowed range of the second byte
    if (c < 0x80) {
      len = 1;
    } else if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
      if (c == 0xE0) lo = 0xA0;
      if (c == 0xED) hi = 0x9F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
      if (c == 0xF0) lo = 0x90;
      if (c == 0xF4) hi = 0x8F;
    }
    if (len == 0) {
      out += kReplacement;
      ++i;
      continue;
    }
    std::size_t k = 1;
    for (; k < len && i + k < n; ++k) {
      const unsigned char b = s[i + k];
      const unsigned char min = k == 1 ? lo : 0x80;
      const unsigned char max = k == 1 ? hi : 0xBF;
      if (b < min || b > max) break;
    }
    if (k == len) {
      out.append(bytes.substr(i, len));
    } else {
      out += kReplacement;  // maximal invalid prefix collapses to one U+FFFD
    }
    i += k;
  }
  return out;
}

}  // namespace bdiv
