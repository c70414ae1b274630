#include <gtest/gtest.h>

#include "bdiv/distance.hpp"
#include "bdiv/error.hpp"
#include "support.hpp"

using namespace bdiv;
using namespace bdiv::testing;

namespace {

std::vector<Outcome> outcomes(std::initializer_list<int> v) {
  std::vector<Outcome> out;
  for (int x : v) out.push_back(x ? Outcome::Fail : Outcome::Pass);
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected bdiv::Error";
  return ErrorKind::InvalidInput;
}

std::string random_bytes(Rng& rng, std::size_t n) {
  std::string s(n, '\0');
  for (auto& c : s) c = static_cast<char>(rng.below(256));
  return s;
}

std::string java_like_text(std::size_t min_bytes) {
  std::string s;
  int i = 0;
  while (s.size() < min_bytes) {
    s += "  @Test\n  public void testCase" + std::to_string(i) + "() {\n    MyDate date = new MyDate(2019, 10, " +
         std::to_string(i % 28 + 1) + ");\n    assertEquals(" + std::to_string(i * 7 % 13) +
         ", date.getMonth());\n  }\n";
    ++i;
  }
  return s;
}

}  // namespace

TEST(Confusion, ToyYearVersusMonth) {
  // column-wise: FN, FP, TN, TP, FP
  const auto c = confusion(outcomes({0, 1, 0, 1, 1}), outcomes({1, 0, 0, 1, 0}));
  EXPECT_EQ(c, (ConfusionCounts{1, 1, 2, 1}));
}

TEST(Confusion, IdentityAndExtremes) {
  const auto row = outcomes({1, 0, 1, 1});
  const auto self = confusion(row, row);
  EXPECT_EQ(self.fp, 0u);
  EXPECT_EQ(self.fn, 0u);
  const auto c = confusion(outcomes({0, 0, 0}), outcomes({1, 1, 1}));
  EXPECT_EQ(c, (ConfusionCounts{0, 0, 0, 3}));
}

TEST(Confusion, Errors) {
  EXPECT_EQ(kind_of([] { confusion(outcomes({1, 0}), outcomes({1})); }), ErrorKind::LengthMismatch);
  const std::vector<Outcome> unknown{Outcome::Unknown};
  EXPECT_EQ(kind_of([&] { confusion(unknown, outcomes({1})); }), ErrorKind::UnknownCell);
}

TEST(DAcc, Values) {
  EXPECT_NEAR(d_acc({1, 1, 1, 2}), 0.6, 1e-12);
  EXPECT_EQ(d_acc({2, 3, 0, 0}), 0.0);
  EXPECT_NEAR(d_acc({0, 1, 2, 2}), 0.8, 1e-12);
}

TEST(DMcc, Values) {
  EXPECT_NEAR(d_mcc({1, 1, 1, 2}, false), 7.0 / 12.0, 1e-12);
  EXPECT_EQ(d_mcc({2, 3, 0, 0}, true), 0.0);
  EXPECT_NEAR(d_mcc({0, 1, 2, 2}, false), 5.0 / 6.0, 1e-12);
}

TEST(DMcc, DegenerateMarginals) {
  // constant rows: identical -> 0, otherwise uncorrelated -> 0.5
  EXPECT_EQ(d_mcc({0, 4, 0, 0}, true), 0.0);
  EXPECT_EQ(d_mcc({0, 2, 0, 2}, false), 0.5);
  EXPECT_EQ(d_mcc({0, 0, 3, 0}, false), 0.5);
}

TEST(DistanceFormulas, SymmetricUnderRowSwap) {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    ConfusionCounts c{rng.below(20), rng.below(20), rng.below(20), rng.below(20)};
    if (c.total() == 0) continue;
    ConfusionCounts swapped{c.tp, c.tn, c.fn, c.fp};
    EXPECT_NEAR(d_acc(c), d_acc(swapped), 1e-12);
    EXPECT_NEAR(d_mcc(c, false), d_mcc(swapped, false), 1e-12);
    EXPECT_GE(d_mcc(c, false), 0.0);
    EXPECT_LE(d_mcc(c, false), 1.0);
  }
}

TEST(BehaviouralMatrix, ToyMccMatchesPublishedTable) {
  const double table[5][5] = {{0.00, 0.58, 0.58, 0.00, 0.58},
                              {0.58, 0.00, 0.00, 0.58, 0.83},
                              {0.58, 0.00, 0.00, 0.58, 0.83},
                              {0.00, 0.58, 0.58, 0.00, 0.58},
                              {0.58, 0.83, 0.83, 0.58, 0.00}};
  const auto dm = behavioural_matrix(toy_tom(), BehaviouralMeasure::Mcc);
  EXPECT_EQ(dm.measure(), "mcc");
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(dm(i, j), table[i][j], 0.005) << i << "," << j;
  }
}

TEST(BehaviouralMatrix, ToyAccuracy) {
  // frozen from an exact-fraction enumeration of column agreements
  const double expected[5][5] = {{0, 0.6, 0.6, 0, 0.6},
                                 {0.6, 0, 0, 0.6, 0.8},
                                 {0.6, 0, 0, 0.6, 0.8},
                                 {0, 0.6, 0.6, 0, 0.6},
                                 {0.6, 0.8, 0.8, 0.6, 0}};
  const auto dm = behavioural_matrix(toy_tom(), BehaviouralMeasure::Accuracy);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(dm(i, j), expected[i][j], 1e-9);
  }
}

TEST(BehaviouralMatrix, IdenticalRowsGiveZeroMatrix) {
  const auto tom = matrix_from_ints({"a", "b"}, {{1, 0, 1}, {1, 0, 1}});
  for (auto m : {BehaviouralMeasure::Accuracy, BehaviouralMeasure::Mcc}) {
    const auto dm = behavioural_matrix(tom, m);
    EXPECT_EQ(dm(0, 1), 0.0);
    EXPECT_EQ(dm(1, 0), 0.0);
  }
}

TEST(BehaviouralMatrix, TooFewTests) {
  const auto tom = matrix_from_ints({"a"}, {{1}});
  EXPECT_EQ(kind_of([&] { behavioural_matrix(tom, BehaviouralMeasure::Mcc); }), ErrorKind::TooFewTests);
}

TEST(BehaviouralMatrix, MatchesBruteForceOracle) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const std::size_t m = 1 + rng.below(6);
    const auto rows = random_rows(rng, n, m, 0.2 + 0.6 * rng.unit());
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("t" + std::to_string(i));
    const auto tom = matrix_from_ints(ids, rows);
    for (bool mcc : {false, true}) {
      const auto dm = behavioural_matrix(tom, mcc ? BehaviouralMeasure::Mcc : BehaviouralMeasure::Accuracy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double want = i == j ? 0.0 : oracle_distance(rows[i], rows[j], mcc);
          ASSERT_NEAR(dm(i, j), want, 1e-9);
        }
      }
    }
  }
}

TEST(BehaviouralMatrix, ParallelMatchesSerial) {
  Rng rng(4);
  const auto tom = random_tom(rng, 40, 60);
  const auto serial = behavioural_matrix(tom, BehaviouralMeasure::Mcc, 1);
  const auto parallel = behavioural_matrix(tom, BehaviouralMeasure::Mcc, 7);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 40; ++j) ASSERT_EQ(serial(i, j), parallel(i, j));
  }
}

TEST(Ncd, SelfDistanceIsSmall) {
  const auto text = java_like_text(1024);
  DeflateCompressor deflate;
  const double d = ncd(text, text, deflate);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 0.15);
}

TEST(Ncd, TrivialVersusRandomIsFar) {
  Rng rng(2);
  const std::string trivial(1024, 'a');
  const auto noise = random_bytes(rng, 1024);
  DeflateCompressor deflate;
  EXPECT_GE(ncd(trivial, noise, deflate), 0.9);
  EXPECT_EQ(ncd(trivial, noise, deflate), ncd(noise, trivial, deflate));
}

TEST(Ncd, EmptyInput) {
  DeflateCompressor deflate;
  EXPECT_EQ(kind_of([&] { ncd("", "x", deflate); }), ErrorKind::EmptyInput);
}

TEST(Ncd, PluggableCompressor) {
  // a "compressor" that only counts distinct bytes; concatenations of
  // identical alphabets give distance 0
  struct AlphabetSize final : Compressor {
    std::size_t compressed_size(std::string_view d) const override {
      std::vector<bool> seen(256, false);
      std::size_t n = 0;
      for (unsigned char c : d) n += !seen[c], seen[c] = true;
      return n;
    }
    std::string name() const override { return "alphabet"; }
  } alphabet;
  EXPECT_EQ(ncd("abab", "baba", alphabet), 0.0);
  EXPECT_NEAR(ncd("ab", "cd", alphabet), 1.0, 1e-12);
}

TEST(Jaccard, Values) {
  const std::vector<std::string> xy{"x", "y"}, yz{"y", "z"}, ab{"a", "b"};
  EXPECT_EQ(jaccard(xy, xy), 0.0);
  EXPECT_EQ(jaccard(xy, ab), 1.0);
  EXPECT_NEAR(jaccard(xy, yz), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(kind_of([] { jaccard({}, {}); }), ErrorKind::BothEmpty);
}

TEST(Tokenize, AlphanumericRuns) {
  EXPECT_EQ(tokenize("assertEquals(31, date.getMonthLength());"),
            (std::vector<std::string>{"assertEquals", "31", "date", "getMonthLength"}));
  EXPECT_TRUE(tokenize("(); ").empty());
}

TEST(Levenshtein, Values) {
  EXPECT_EQ(levenshtein_norm("abc", "abc"), 0.0);
  EXPECT_EQ(levenshtein_norm("abc", ""), 1.0);
  EXPECT_NEAR(levenshtein_norm("kitten", "sitting"), 3.0 / 7.0, 1e-12);
  EXPECT_EQ(kind_of([] { levenshtein_norm("", ""); }), ErrorKind::BothEmpty);
  // code points, not bytes: one substitution out of two characters
  EXPECT_NEAR(levenshtein_norm("\xC3\xA9" "a", "ea"), 0.5, 1e-12);
}

TEST(Levenshtein, MatchesTextbookOracle) {
  Rng rng(77);
  for (int i = 0; i < 500; ++i) {
    auto gen = [&] {
      std::string s(rng.below(31), 'a');
      for (auto& c : s) c = static_cast<char>('a' + rng.below(4));
      return s;
    };
    const auto a = gen();
    const auto b = gen();
    if (a.empty() && b.empty()) continue;
    const double want = static_cast<double>(oracle_levenshtein(a, b)) / static_cast<double>(std::max(a.size(), b.size()));
    ASSERT_NEAR(levenshtein_norm(a, b), want, 1e-12) << a << " / " << b;
  }
}

TEST(ArtefactMatrix, Measures) {
  ArtefactCorpus same{{{"P", "assert x"}, {"Q", "assert x"}}};
  EXPECT_EQ(artefact_matrix(same, ArtefactMeasure::Jaccard)(0, 1), 0.0);

  ArtefactCorpus pq{{{"P", "abc"}, {"Q", "abd"}}};
  const auto lev = artefact_matrix(pq, ArtefactMeasure::Levenshtein);
  EXPECT_NEAR(lev(0, 1), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(lev(1, 0), 1.0 / 3.0, 1e-12);

  ArtefactCorpus one{{{"P", "abc"}}};
  EXPECT_EQ(kind_of([&] { artefact_matrix(one, ArtefactMeasure::Ncd); }), ErrorKind::TooFewTests);
}

TEST(ArtefactMatrix, NcdIsSymmetricAndBounded) {
  Rng rng(31);
  ArtefactCorpus corpus;
  for (int i = 0; i < 8; ++i) {
    std::string text = java_like_text(50 + rng.below(400));
    if (i % 3 == 0) text += random_bytes(rng, 64);
    corpus.entries.emplace_back("t" + std::to_string(i), text);
  }
  const auto dm = artefact_matrix(corpus, ArtefactMeasure::Ncd, nullptr, 3);
  for (std::size_t i = 0; i < dm.size(); ++i) {
    EXPECT_EQ(dm(i, i), 0.0);
    for (std::size_t j = 0; j < dm.size(); ++j) {
      EXPECT_EQ(dm(i, j), dm(j, i));
      EXPECT_GE(dm(i, j), 0.0);
      EXPECT_LE(dm(i, j), 1.0);
    }
  }
}

TEST(DistanceCsv, FormatAndParse) {
  const auto dm = behavioural_matrix(toy_tom(), BehaviouralMeasure::Mcc);
  const auto csv = write_distance_csv(dm);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,testYear,testMonthLength,testMonth,testIsLeapYear,testDay");
  EXPECT_NE(csv.find("testYear,0.000000,0.583333,0.583333,0.000000,0.583333\n"), std::string::npos);
  const auto back = parse_distance_csv(csv);
  EXPECT_EQ(back.ids(), dm.ids());
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(back(i, j), dm(i, j), 5e-7);
  }
}

TEST(DistanceCsv, RejectsBadMatrices) {
  EXPECT_EQ(kind_of([] { parse_distance_csv("id,a,b\na,0,0.5\nb,0.4,0\n"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_distance_csv("id,a,b\na,0.1,0.5\nb,0.5,0\n"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_distance_csv("id,a,b\na,0,1.5\nb,1.5,0\n"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_distance_csv("id,a,b\na,0,x\nb,0.5,0\n"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_distance_csv("id,a,a\na,0,0\na,0,0\n"); }), ErrorKind::DuplicateId);
}
