// Copyright 2026 The normchain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "normchain/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "normchain/error.h"

namespace normchain::metrics {
namespace {

std::vector<EvalPair> Pairs(
    std::initializer_list<std::pair<std::string, std::string>> list) {
  std::vector<EvalPair> out;
  for (const auto& [h, r] : list) out.push_back({h, {r}});
  return out;
}

std::string RandomSentence(std::mt19937& rng, size_t vocab, size_t max_len) {
  const size_t len = 1 + rng() % max_len;
  std::string out;
  for (size_t i = 0; i < len; ++i) {
    if (i) out += ' ';
    out += "w" + std::to_string(rng() % vocab);
  }
  return out;
}

// --- BLEU ----------------------------------------------------------------------

TEST(CorpusBleu, IdentityAndDisjoint) {
  EXPECT_DOUBLE_EQ(CorpusBleu(Pairs({{"a b c d e", "a b c d e"},
                                     {"x y z w", "x y z w"}})),
                   100.0);
  EXPECT_DOUBLE_EQ(CorpusBleu(Pairs({{"a b c d", "e f g h"}})), 0.0);
}

TEST(CorpusBleu, HandCases) {
  // No 4-gram in common ("the cat is on" etc.), so unsmoothed BLEU is 0.
  EXPECT_DOUBLE_EQ(
      CorpusBleu(Pairs({{"the cat sat on the mat", "the cat is on the mat"}})),
      0.0);
  // Clipped precisions 5/6, 3/5, 2/4, 1/3; product 1/12; equal lengths.
  EXPECT_NEAR(
      CorpusBleu(Pairs({{"the cat sat on the mat", "the cat sat on a mat"}})),
      100.0 * std::pow(1.0 / 12.0, 0.25), 1e-9);
  EXPECT_NEAR(
      CorpusBleu(Pairs({{"the cat sat on the mat", "the cat sat on a mat"}})),
      53.7285, 1e-4);
}

TEST(CorpusBleu, BrevityPenaltyAndClosestReference) {
  // Hypothesis of 4 tokens against a reference of 8: BP = exp(1 - 8/4).
  const double bleu = CorpusBleu(Pairs({{"a b c d", "a b c d e f g h"}}));
  EXPECT_NEAR(bleu, 100.0 * std::exp(1.0 - 2.0), 1e-9);
  // With a 4-token reference available, the closest length is 4: no penalty.
  const std::vector<EvalPair> multi = {
      {"a b c d", {"a b c d e f g h", "a b c d"}}};
  EXPECT_DOUBLE_EQ(CorpusBleu(multi), 100.0);
  // Ties on distance prefer the shorter reference (3 vs 5 around 4).
  const std::vector<EvalPair> tie = {{"a b c d", {"a b c d e", "x y z"}}};
  const double with_short = CorpusBleu(tie);
  EXPECT_DOUBLE_EQ(with_short, 100.0);
}

TEST(CorpusBleu, CaseSensitive) {
  EXPECT_DOUBLE_EQ(CorpusBleu(Pairs({{"A b c d", "a b c d"}})), 0.0);
}

TEST(CorpusBleu, Errors) {
  EXPECT_THROW(CorpusBleu(std::vector<EvalPair>{}), ConfigError);
  const std::vector<EvalPair> no_ref = {{"a", {}}};
  EXPECT_THROW(CorpusBleu(no_ref), ConfigError);
}

// --- ROUGE-L -------------------------------------------------------------------

TEST(RougeL, Examples) {
  EXPECT_DOUBLE_EQ(RougeL({"the cat sat", {"the cat sat"}}), 1.0);
  EXPECT_DOUBLE_EQ(RougeL({"a b", {"c d"}}), 0.0);
  // LCS 2, P = 1, R = 2/3, beta^2 = 1.44.
  const double expected = (1 + 1.44) * (2.0 / 3.0) / ((2.0 / 3.0) + 1.44);
  EXPECT_NEAR(RougeL({"the cat", {"the cat sat"}}), expected, 1e-12);
  EXPECT_NEAR(RougeL({"the cat", {"the cat sat"}}), 0.772152, 1e-6);
  EXPECT_DOUBLE_EQ(RougeL({"", {""}}), 0.0);
  EXPECT_DOUBLE_EQ(RougeL({"The CAT", {"the cat"}}), 1.0);
  EXPECT_DOUBLE_EQ(RougeL({"x y", {"a b", "y x y"}}),
                   RougeL({"x y", {"y x y"}}));
}

TEST(MeanRougeL, Average) {
  const auto pairs = Pairs({{"a b", "a b"}, {"a b", "c d"}});
  EXPECT_DOUBLE_EQ(MeanRougeL(pairs), 0.5);
}

// --- diversity -----------------------------------------------------------------

TEST(JointNgramDiversity, Examples) {
  const std::vector<std::string> distinct = {"a b c d e"};
  EXPECT_DOUBLE_EQ(JointNgramDiversity(distinct), 1.0);
  const std::vector<std::string> twice = {"a b", "a b"};
  EXPECT_DOUBLE_EQ(JointNgramDiversity(twice), 0.5);
  const std::vector<std::string> empty = {"", "  "};
  EXPECT_THROW(JointNgramDiversity(empty), ConfigError);
  const std::vector<std::string> cased = {"A b", "a B"};
  EXPECT_DOUBLE_EQ(JointNgramDiversity(cased), 0.5);
}

// --- Krippendorff's alpha ------------------------------------------------------

using Row = std::vector<std::optional<std::string>>;

// Pairwise formulation: alpha = 1 - (n-1) * sum_u sum_{i != j in u}
// d(v_ui, v_uj) / (m_u - 1) / sum_{i != j over all pairable values} d.
double OracleAlpha(const RatingMatrix& m) {
  std::vector<std::string> values;
  double within = 0.0;
  for (const Row& row : m) {
    std::vector<std::string> v;
    for (const auto& x : row) {
      if (x) v.push_back(*x);
    }
    if (v.size() < 2) continue;
    double d = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      for (size_t j = 0; j < v.size(); ++j) d += (i != j && v[i] != v[j]);
    }
    within += d / static_cast<double>(v.size() - 1);
    values.insert(values.end(), v.begin(), v.end());
  }
  double between = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    for (size_t j = 0; j < values.size(); ++j) {
      between += (i != j && values[i] != values[j]);
    }
  }
  const double n = static_cast<double>(values.size());
  if (within == 0) return 1.0;
  return 1.0 - (n - 1.0) * within / between;
}

RatingMatrix FromInts(std::vector<std::vector<int>> rows) {
  RatingMatrix m;
  for (const auto& r : rows) {
    Row row;
    for (int v : r) {
      row.push_back(v < 0 ? std::nullopt : std::optional(std::to_string(v)));
    }
    m.push_back(row);
  }
  return m;
}

TEST(KrippendorffAlpha, Examples) {
  EXPECT_DOUBLE_EQ(KrippendorffAlpha(FromInts({{1, 1}, {0, 0}})), 1.0);
  EXPECT_DOUBLE_EQ(KrippendorffAlpha(FromInts({{2, 2, 2}, {1, 1, -1}})), 1.0);
  // Coincidences o00 = o11 = o01 = o10 = 2, n = 8: Do = 1/2, De = 32/56,
  // alpha = 1 - 0.875.
  const RatingMatrix hand = FromInts({{1, 1}, {1, 0}, {0, 1}, {0, 0}});
  EXPECT_NEAR(KrippendorffAlpha(hand), 0.125, 1e-12);
  EXPECT_NEAR(OracleAlpha(hand), 0.125, 1e-12);
}

TEST(KrippendorffAlpha, SingletonsIgnoredAndErrors) {
  EXPECT_DOUBLE_EQ(KrippendorffAlpha(FromInts({{1, 1}, {0, 0}, {1, -1}})),
                   1.0);
  EXPECT_THROW(KrippendorffAlpha(FromInts({{1, -1}, {-1, 0}})), ConfigError);
  EXPECT_THROW(KrippendorffAlpha({}), ConfigError);
}

TEST(KrippendorffAlpha, MatchesPairwiseOracle) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t items = 2 + rng() % 8, raters = 2 + rng() % 4;
    std::vector<std::vector<int>> rows(items, std::vector<int>(raters));
    for (auto& r : rows) {
      for (int& v : r) v = (rng() % 5 == 0) ? -1 : static_cast<int>(rng() % 3);
    }
    const RatingMatrix m = FromInts(rows);
    double expected;
    try {
      expected = OracleAlpha(m);
    } catch (...) {
      continue;
    }
    bool pairable = false;
    for (const auto& r : rows) {
      pairable |= std::count_if(r.begin(), r.end(),
                                [](int v) { return v >= 0; }) >= 2;
    }
    if (!pairable) {
      EXPECT_THROW(KrippendorffAlpha(m), ConfigError);
      continue;
    }
    // One distinct value overall makes De = 0; both sides call it 1.
    if (!std::isfinite(expected)) continue;
    EXPECT_NEAR(KrippendorffAlpha(m), expected, 1e-9) << "trial " << trial;
  }
}

TEST(KrippendorffAlpha, FlippingAgreementLowersAlpha) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<int>> rows(6, std::vector<int>(3));
    for (auto& r : rows) {
      for (int& v : r) v = static_cast<int>(rng() % 2);
    }
    rows[0] = {0, 0, 0};
    rows[1] = {1, 1, 1};
    const double before = KrippendorffAlpha(FromInts(rows));
    rows[1][2] = 0;  // one co-rated pair now disagrees
    EXPECT_LT(KrippendorffAlpha(FromInts(rows)), before);
  }
}

// --- classification --------------------------------------------------------------

TEST(EvaluateClassification, Examples) {
  const std::vector<std::string> gold = {"pos", "neg", "pos", "neg"};
  auto s = EvaluateClassification(gold, gold, "pos");
  EXPECT_DOUBLE_EQ(s.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
  const std::vector<std::string> all_neg(4, "neg");
  s = EvaluateClassification(all_neg, gold, "pos");
  EXPECT_DOUBLE_EQ(s.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.0);

  // TP 3, FP 1, FN 2, TN 4.
  std::vector<std::string> pred, truth;
  auto add = [&](int count, const char* p, const char* g) {
    for (int i = 0; i < count; ++i) {
      pred.push_back(p);
      truth.push_back(g);
    }
  };
  add(3, "pos", "pos");
  add(1, "pos", "neg");
  add(2, "neg", "pos");
  add(4, "neg", "neg");
  s = EvaluateClassification(pred, truth, "pos");
  EXPECT_DOUBLE_EQ(s.accuracy, 0.7);
  EXPECT_NEAR(s.f1, 2.0 / 3.0, 1e-12);
}

TEST(EvaluateClassification, Errors) {
  const std::vector<std::string> a = {"pos"}, b = {"pos", "neg"},
                                 c = {"x", "y", "z"};
  EXPECT_THROW(EvaluateClassification(a, b, "pos"), ConfigError);
  EXPECT_THROW(EvaluateClassification({}, {}, "pos"), ConfigError);
  EXPECT_THROW(EvaluateClassification(c, c, "x"), ConfigError);
}

// --- properties over random corpora ---------------------------------------------

TEST(Properties, PermutationInvariance) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<EvalPair> pairs;
    const size_t n = 1 + rng() % 8;
    for (size_t i = 0; i < n; ++i) {
      pairs.push_back({RandomSentence(rng, 6, 9),
                       {RandomSentence(rng, 6, 9), RandomSentence(rng, 6, 9)}});
    }
    std::vector<EvalPair> shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_NEAR(CorpusBleu(pairs), CorpusBleu(shuffled), 1e-9);
    EXPECT_NEAR(MeanRougeL(pairs), MeanRougeL(shuffled), 1e-12);
    std::vector<std::string> outputs;
    for (const auto& p : pairs) outputs.push_back(p.hypothesis);
    std::vector<std::string> outputs_shuffled = outputs;
    std::shuffle(outputs_shuffled.begin(), outputs_shuffled.end(), rng);
    EXPECT_DOUBLE_EQ(JointNgramDiversity(outputs),
                     JointNgramDiversity(outputs_shuffled));
  }
}

TEST(Properties, DuplicationNeverIncreasesDiversity) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> outputs;
    const size_t n = 1 + rng() % 6;
    for (size_t i = 0; i < n; ++i) outputs.push_back(RandomSentence(rng, 8, 7));
    std::vector<std::string> doubled = outputs;
    doubled.insert(doubled.end(), outputs.begin(), outputs.end());
    EXPECT_LE(JointNgramDiversity(doubled), JointNgramDiversity(outputs));
  }
}

TEST(Properties, MaximalOnlyOnExactMatch) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string hyp = RandomSentence(rng, 4, 6);
    const std::string ref = RandomSentence(rng, 4, 6);
    const double rouge = RougeL({hyp, {ref}});
    EXPECT_EQ(rouge == 1.0, hyp == ref) << hyp << " | " << ref;
    EXPECT_DOUBLE_EQ(RougeL({hyp, {hyp}}), 1.0);
    const std::vector<EvalPair> same = {{hyp, {hyp}}};
    if (std::count(hyp.begin(), hyp.end(), ' ') >= 3) {  // four tokens
      EXPECT_DOUBLE_EQ(CorpusBleu(same), 100.0);
    }
  }
}

}  // namespace
}  // namespace normchain::metrics
