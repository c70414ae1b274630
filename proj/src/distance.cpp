#include "bdiv/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>

#include "bdiv/error.hpp"
#include "bdiv/parallel.hpp"

namespace bdiv {

ConfusionCounts confusion(std::span<const Outcome> row_a, std::span<const Outcome> row_b) {
  if (row_a.size() != row_b.size()) throw Error(ErrorKind::LengthMismatch, "rows differ in length");
  if (row_a.empty()) throw Error(ErrorKind::EmptyInput, "rows are empty");
  ConfusionCounts c;
  for (std::size_t k = 0; k < row_a.size(); ++k) {
    const Outcome a = row_a[k];
    const Outcome b = row_b[k];
    if (a == Outcome::Unknown || b == Outcome::Unknown) {
      throw Error(ErrorKind::UnknownCell, "unknown outcome in column " + std::to_string(k));
    }
    const bool fa = a == Outcome::Fail;
    const bool fb = b == Outcome::Fail;
    if (fa && fb) {
      ++c.tp;
    } else if (!fa && !fb) {
      ++c.tn;
    } else if (fa) {
      ++c.fp;
    } else {
      ++c.fn;
    }
  }
  return c;
}

double d_acc(const ConfusionCounts& c) {
  const auto total = static_cast<double>(c.total());
  return 1.0 - static_cast<double>(c.tp + c.tn) / total;
}

double d_mcc(const ConfusionCounts& c, bool rows_identical) {
  const double tp = static_cast<double>(c.tp);
  const double tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return rows_identical ? 0.0 : 0.5;
  const double raw = (tp * tn - fp * fn) / std::sqrt(denom);
  return std::clamp((1.0 - raw) / 2.0, 0.0, 1.0);
}

namespace {

double ncd_from_sizes(double cx, double cy, double cxy, double cyx) {
  const double joint = (cxy + cyx) / 2.0;
  const double lo = std::min(cx, cy);
  const double hi = std::max(cx, cy);
  return std::clamp((joint - lo) / hi, 0.0, 1.0);
}

std::string concat(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size());
  out.append(a);
  out.append(b);
  return out;
}

double jaccard_sorted(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) throw Error(ErrorKind::BothEmpty, "both token sets are empty");
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

std::vector<std::string> sorted_unique(std::vector<std::string> tokens) {
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

}  // namespace

double ncd(std::string_view x, std::string_view y, const Compressor& compressor) {
  if (x.empty() || y.empty()) throw Error(ErrorKind::EmptyInput, "NCD needs non-empty inputs");
  const auto cx = static_cast<double>(compressor.compressed_size(x));
  const auto cy = static_cast<double>(compressor.compressed_size(y));
  const auto cxy = static_cast<double>(compressor.compressed_size(concat(x, y)));
  const auto cyx = static_cast<double>(compressor.compressed_size(concat(y, x)));
  return ncd_from_sizes(cx, cy, cxy, cyx);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const auto is_alnum = [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9');
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_alnum(text[j])) ++j;
    tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

double jaccard(std::span<const std::string> a, std::span<const std::string> b) {
  return jaccard_sorted(sorted_unique({a.begin(), a.end()}), sorted_unique({b.begin(), b.end()}));
}

std::u32string utf8_to_code_points(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = s[i];
    std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    if (c >= 0x80 && c < 0xC0) len = 1;  // stray continuation byte
    if (i + len > text.size()) len = text.size() - i;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (s[i + k] & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] != b[j - 1]);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double levenshtein_norm(std::string_view a, std::string_view b) {
  const auto ua = utf8_to_code_points(a);
  const auto ub = utf8_to_code_points(b);
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) throw Error(ErrorKind::BothEmpty, "both strings are empty");
  return static_cast<double>(levenshtein(ua, ub)) / static_cast<double>(longest);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::string measure)
    : ids_(std::move(ids)), values_(ids_.size() * ids_.size(), 0.0), measure_(std::move(measure)) {}

const char* measure_name(BehaviouralMeasure m) { return m == BehaviouralMeasure::Accuracy ? "acc" : "mcc"; }

const char* measure_name(ArtefactMeasure m) {
  switch (m) {
    case ArtefactMeasure::Ncd: return "ncd";
    case ArtefactMeasure::Jaccard: return "jaccard";
    case ArtefactMeasure::Levenshtein: return "levenshtein";
  }
  return "?";
}

namespace {

// Fills the upper triangle row by row; each row is independent.
template <typename PairDistance>
void fill_pairs(DistanceMatrix& dm, unsigned jobs, PairDistance&& dist) {
  const std::size_t n = dm.size();
  detail::parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) dm.set(i, j, dist(i, j));
  });
}

}  // namespace

DistanceMatrix behavioural_matrix(const OutcomeMatrix& tom, BehaviouralMeasure measure, unsigned jobs) {
  if (tom.num_tests() < 2) throw Error(ErrorKind::TooFewTests, "need at least two tests");
  if (tom.num_mutants() < 1) throw Error(ErrorKind::EmptyInput, "matrix has no mutants");
  DistanceMatrix dm(tom.test_ids(), measure_name(measure));
  fill_pairs(dm, jobs, [&](std::size_t i, std::size_t j) {
    const auto a = tom.row(i);
    const auto b = tom.row(j);
    const auto counts = confusion(a, b);
    if (measure == BehaviouralMeasure::Accuracy) return d_acc(counts);
    return d_mcc(counts, std::equal(a.begin(), a.end(), b.begin()));
  });
  return dm;
}

DistanceMatrix artefact_matrix(const ArtefactCorpus& corpus, ArtefactMeasure measure,
                               const Compressor* compressor, unsigned jobs) {
  const std::size_t n = corpus.size();
  if (n < 2) throw Error(ErrorKind::TooFewTests, "need at least two corpus entries");
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& [id, payload] : corpus.entries) ids.push_back(id);
  DistanceMatrix dm(std::move(ids), measure_name(measure));

  switch (measure) {
    case ArtefactMeasure::Ncd: {
      DeflateCompressor fallback;
      const Compressor& c = compressor ? *compressor : fallback;
      std::vector<double> sizes(n);
      detail::parallel_for(n, jobs, [&](std::size_t i) {
        const auto& payload = corpus.entries[i].second;
        if (payload.empty()) throw Error(ErrorKind::EmptyInput, "empty payload for NCD");
        sizes[i] = static_cast<double>(c.compressed_size(payload));
      });
      fill_pairs(dm, jobs, [&](std::size_t i, std::size_t j) {
        const auto& x = corpus.entries[i].second;
        const auto& y = corpus.entries[j].second;
        const auto cxy = static_cast<double>(c.compressed_size(concat(x, y)));
        const auto cyx = static_cast<double>(c.compressed_size(concat(y, x)));
        return ncd_from_sizes(sizes[i], sizes[j], cxy, cyx);
      });
      break;
    }
    case ArtefactMeasure::Jaccard: {
      std::vector<std::vector<std::string>> sets(n);
      for (std::size_t i = 0; i < n; ++i) sets[i] = sorted_unique(tokenize(corpus.entries[i].second));
      fill_pairs(dm, jobs, [&](std::size_t i, std::size_t j) { return jaccard_sorted(sets[i], sets[j]); });
      break;
    }
    case ArtefactMeasure::Levenshtein: {
      std::vector<std::u32string> texts(n);
      for (std::size_t i = 0; i < n; ++i) texts[i] = utf8_to_code_points(corpus.entries[i].second);
      fill_pairs(dm, jobs, [&](std::size_t i, std::size_t j) {
        const std::size_t longest = std::max(texts[i].size(), texts[j].size());
        if (longest == 0) throw Error(ErrorKind::BothEmpty, "both payloads are empty");
        return static_cast<double>(levenshtein(texts[i], texts[j])) / static_cast<double>(longest);
      });
      break;
    }
  }
  return dm;
}

std::string write_distance_csv(const DistanceMatrix& dm) {
  std::string out = "id";
  for (const auto& id : dm.ids()) {
    out += ',';
    out += id;
  }
  out += '\n';
  char buf[32];
  for (std::size_t i = 0; i < dm.size(); ++i) {
    out += dm.ids()[i];
    for (std::size_t j = 0; j < dm.size(); ++j) {
      std::snprintf(buf, sizeof buf, ",%.6f", dm(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

DistanceMatrix parse_distance_csv(std::string_view text, std::string measure) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    std::vector<std::string> fields;
    std::size_t f = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.emplace_back(line.substr(f, i - f));
        f = i + 1;
      }
    }
    rows.push_back(std::move(fields));
    start = end + 1;
  }
  if (rows.empty() || rows[0].empty() || rows[0][0] != "id") {
    throw Error(ErrorKind::InvalidInput, "distance CSV header must start with 'id'");
  }
  std::vector<std::string> ids(rows[0].begin() + 1, rows[0].end());
  const std::size_t n = ids.size();
  if (rows.size() != n + 1) throw Error(ErrorKind::InvalidInput, "distance CSV is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(ids.begin() + static_cast<std::ptrdiff_t>(i) + 1, ids.end(), ids[i]) != ids.end()) {
      throw Error(ErrorKind::DuplicateId, "duplicate id '" + ids[i] + "' in distance CSV");
    }
  }

  DistanceMatrix dm(ids, std::move(measure));
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1) throw Error(ErrorKind::RaggedRow, "distance CSV row " + std::to_string(i + 1));
    if (row[0] != ids[i]) throw Error(ErrorKind::InvalidInput, "row id '" + row[0] + "' does not match header");
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(row[j + 1], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != row[j + 1].size() || !(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::InvalidInput, "bad distance '" + row[j + 1] + "'");
      }
      values[i * n + j] = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 0.0) throw Error(ErrorKind::InvalidInput, "non-zero diagonal at '" + ids[i] + "'");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i * n + j] - values[j * n + i]) > 1e-9) {
        throw Error(ErrorKind::InvalidInput, "distance matrix is not symmetric");
      }
      dm.set(i, j, values[i * n + j]);
    }
  }
  return dm;
}

}  // namespace bdiv
