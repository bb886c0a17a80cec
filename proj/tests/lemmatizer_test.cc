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

#include "normchain/lemmatizer.h"

#include <gtest/gtest.h>

#include "normchain/error.h"
#include "test_util.h"

namespace normchain {
namespace {

using LemmaTable = std::map<std::string, std::string, std::less<>>;

TEST(NormalizeToken, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(NormalizeToken("Hello,"), "hello");
  EXPECT_EQ(NormalizeToken("\"(Don't)\""), "don't");
  EXPECT_EQ(NormalizeToken("..."), "");
}

TEST(RuleLemmatizer, Inflections) {
  RuleLemmatizer lem;
  EXPECT_EQ(lem.Lemma("Stealing"), "steal");
  EXPECT_EQ(lem.Lemma("steals"), "steal");
  EXPECT_EQ(lem.Lemma("helped"), "help");
  EXPECT_EQ(lem.Lemma("running"), "run");
  EXPECT_EQ(lem.Lemma("shared"), "share");
  EXPECT_EQ(lem.Lemma("donates"), "donate");
  EXPECT_EQ(lem.Lemma("cities"), "city");
  EXPECT_EQ(lem.Lemma("hoped"), "hope");
  EXPECT_EQ(lem.Lemma("hopped"), "hop");
  EXPECT_EQ(lem.Lemma("opened"), "open");
  EXPECT_EQ(lem.Lemma("cleared"), "clear");
  EXPECT_EQ(lem.Lemma("played"), "play");
  EXPECT_EQ(lem.Lemma("is"), "is");
  EXPECT_EQ(lem.Lemma("!!"), "");
}

TEST(RuleLemmatizer, LemmasDropsEmpties) {
  RuleLemmatizer lem;
  EXPECT_EQ(lem.Lemmas("He helped -- twice!"),
            (std::vector<std::string>{"he", "help", "twice"}));
}

TEST(TableLemmatizer, LookupThenFallback) {
  TableLemmatizer lem(LemmaTable{{"went", "go"}});
  EXPECT_EQ(lem.Lemma("Went"), "go");
  EXPECT_EQ(lem.Lemma("helping"), "help");
}

TEST(TableLemmatizer, FromTsv) {
  testing::TempDir dir;
  testing::WriteFile(dir / "l.tsv", "went\tgo\nmice\tmouse\n\n");
  const TableLemmatizer lem = TableLemmatizer::FromTsv(dir / "l.tsv");
  EXPECT_EQ(lem.Lemma("mice"), "mouse");
  testing::WriteFile(dir / "bad.tsv", "no tab here\n");
  EXPECT_THROW(TableLemmatizer::FromTsv(dir / "bad.tsv"), DataError);
  EXPECT_THROW(TableLemmatizer::FromTsv(dir / "missing.tsv"), IoError);
}

}  // namespace
}  // namespace normchain
