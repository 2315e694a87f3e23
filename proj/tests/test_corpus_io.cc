// tests/test_corpus_io.cc
//
// Copyright 2026  zrbench authors
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

#include "zrb/corpus_io.h"

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "temp_dir.h"
#include "testgen.h"

using zrb::ParseError;
using zrb_test::TempDir;

TEST_CASE("feature file reading") {
  TempDir tmp("feat");
  const auto p = tmp.WriteText("u1.txt", "0.0 1.0\n2.0 3.0\n");
  const auto seq = zrb::ReadFeatureFile(p, 0.01);
  CHECK(seq.utterance_id == "u1");
  CHECK(seq.frames() == 2);
  CHECK(seq.dim == 2);
  CHECK(seq.data == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(seq.frame_shift_s == 0.01);

  const auto single = zrb::ReadFeatureFile(tmp.WriteText("u2.txt", "1.0\n"), 0.01);
  CHECK(single.frames() == 1);
  CHECK(single.dim == 1);

  // missing trailing newline still parses
  const auto tailless =
      zrb::ReadFeatureFile(tmp.WriteText("u3.txt", "1.0 2.0\n3.0 4.0"), 0.01);
  CHECK(tailless.frames() == 2);
}

TEST_CASE("feature file errors carry line numbers") {
  TempDir tmp("featerr");
  try {
    zrb::ReadFeatureFile(tmp.WriteText("r.txt", "1.0 2.0\n3.0\n"), 0.01);
    FAIL("expected ragged-row error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(zrb::ReadFeatureFile(tmp.WriteText("e.txt", ""), 0.01),
                  ParseError);
  try {
    zrb::ReadFeatureFile(tmp.WriteText("n.txt", "1.0\nfoo\n"), 0.01);
    FAIL("expected bad-token error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(zrb::ReadFeatureFile(tmp.WriteText("i.txt", "inf\n"), 0.01),
                  ParseError);
  CHECK_THROWS_AS(
      zrb::ReadFeatureFile(tmp.WriteText("d.txt", "1.0  2.0\n"), 0.01),
      ParseError);  // double space makes an empty token
}

TEST_CASE("feature round trip is exact") {
  TempDir tmp("roundtrip");
  zrb::FeatureSequence seq;
  seq.utterance_id = "rt";
  seq.dim = 2;
  seq.data = {0.0, 1.0, 2.0, 3.0};
  zrb::WriteFeatureFile(seq, tmp.file("rt.txt"));
  auto back = zrb::ReadFeatureFile(tmp.file("rt.txt"), 0.01);
  CHECK(back.data == seq.data);

  seq.dim = 2;
  seq.data = {1e-7, -3.25};
  zrb::WriteFeatureFile(seq, tmp.file("small.txt"));
  back = zrb::ReadFeatureFile(tmp.file("small.txt"), 0.01);
  CHECK(back.data == seq.data);

  // frame shift is not serialized; readers pick their own
  back = zrb::ReadFeatureFile(tmp.file("small.txt"), 0.02);
  CHECK(back.frame_shift_s == 0.02);
  CHECK(back.data == seq.data);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto random = zrb_test::MakeFeatures(rng, "r", 1 + trial % 7, 3);
    zrb::WriteFeatureFile(random, tmp.file("r.txt"));
    CHECK(zrb::ReadFeatureFile(tmp.file("r.txt"), 0.01).data == random.data);
  }
}

TEST_CASE("feature dir reads stems in sorted order") {
  TempDir tmp("dir");
  tmp.WriteText("b.txt", "1.0\n");
  tmp.WriteText("a.txt", "2.0\n");
  tmp.WriteText("ignored.score", "x 1\n");
  const auto map = zrb::ReadFeatureDir(tmp.path(), 0.01);
  CHECK(map.size() == 2);
  CHECK(map.count("a") == 1);
  CHECK(map.count("b") == 1);
  CHECK_THROWS(zrb::ReadFeatureDir(tmp.path() / "missing", 0.01));
}

TEST_CASE("item file parsing") {
  TempDir tmp("items");
  const std::string header = std::string(zrb::kItemFileHeader) + "\n";
  const auto p =
      tmp.WriteText("dev.item", header + "u1 0.25 0.61 IH B T s01\n");
  const auto items = zrb::ParseItemFile(p);
  REQUIRE(items.size() == 1);
  CHECK(items[0].utterance_id == "u1");
  CHECK(items[0].onset_s == 0.25);
  CHECK(items[0].offset_s == 0.61);
  CHECK(items[0].center_phone == "IH");
  CHECK(items[0].prev_phone == "B");
  CHECK(items[0].next_phone == "T");
  CHECK(items[0].speaker_id == "s01");

  CHECK(zrb::ParseItemFile(tmp.WriteText("empty.item", header)).empty());

  try {
    zrb::ParseItemFile(
        tmp.WriteText("bad.item", header + "u1 0.7 0.7 IH B T s01\n"));
    FAIL("expected onset >= offset error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("onset >= offset") != std::string::npos);
  }
  CHECK_THROWS_AS(zrb::ParseItemFile(tmp.WriteText(
                      "hdr.item", "#file onset offset\nu1 0 1 IH B T s\n")),
                  ParseError);
  CHECK_THROWS_AS(zrb::ParseItemFile(
                      tmp.WriteText("short.item", header + "u1 0.1 0.2 IH B\n")),
                  ParseError);
  CHECK_THROWS_AS(
      zrb::ParseItemFile(tmp.WriteText(
          "neg.item", header + "u1 -0.1 0.2 IH B T s01\n")),
      ParseError);
}

TEST_CASE("pair table parsing") {
  TempDir tmp("pairs");
  const std::string header = "pair_id\tpositive\tnegative\tgroup\n";
  const auto pairs = zrb::ParsePairTable(
      tmp.WriteText("p.tsv", header + "p1\tbrick_01\tblick_01\tdev\n"
                                      "p2\tsqualled_01\tsquilled_01\t\n"));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].pair_id == "p1");
  CHECK(pairs[0].positive_id == "brick_01");
  CHECK(pairs[0].negative_id == "blick_01");
  CHECK(pairs[0].group == "dev");
  CHECK(!pairs[1].group.has_value());

  CHECK_THROWS_AS(
      zrb::ParsePairTable(tmp.WriteText(
          "dup.tsv", header + "p1\ta\tb\t\np1\tc\td\t\n")),
      ParseError);
  CHECK_THROWS_AS(zrb::ParsePairTable(tmp.WriteText(
                      "cols.tsv", header + "p1\ta\tb\n")),
                  ParseError);
  // unknown extra columns are rejected, not ignored
  CHECK_THROWS_AS(zrb::ParsePairTable(tmp.WriteText(
                      "extra.tsv",
                      "pair_id\tpositive\tnegative\tgroup\textra\n")),
                  ParseError);
  CHECK_THROWS_AS(zrb::ParsePairTable(tmp.WriteText(
                      "same.tsv", header + "p1\ta\ta\t\n")),
                  ParseError);
}

TEST_CASE("similarity table parsing") {
  TempDir tmp("sim");
  const std::string header = "token_a\ttoken_b\tword_a\tword_b\tscore\tdataset\n";
  const auto records = zrb::ParseSimilarityTable(tmp.WriteText(
      "s.tsv", header + "abduct_01\tkidnap_01\tabduct\tkidnap\t8.63\tdev\n"
                        "abduct_01\ttap_01\tabduct\ttap\t0.5\tdev\n"));
  REQUIRE(records.size() == 2);
  CHECK(records[0].human_score == 8.63);
  CHECK(records[1].human_score == 0.5);
  CHECK(records[0].dataset == "dev");

  CHECK_THROWS_AS(zrb::ParseSimilarityTable(tmp.WriteText(
                      "range.tsv", header + "a\tb\tw1\tw2\t10.5\tdev\n")),
                  ParseError);
  CHECK_THROWS_AS(zrb::ParseSimilarityTable(tmp.WriteText(
                      "hdr.tsv", "token_a\ttoken_b\n")),
                  ParseError);
}

TEST_CASE("score file round trip") {
  TempDir tmp("scores");
  zrb::ScoreTable table = {{"u1", -1.5}, {"u2", 0.25}};
  zrb::WriteScoreFile(table, tmp.file("s.score"));
  CHECK(zrb::ReadScoreFile(tmp.file("s.score")) == table);

  CHECK_THROWS_AS(
      zrb::ReadScoreFile(tmp.WriteText("dup.score", "u1 1\nu1 2\n")),
      ParseError);
  CHECK_THROWS_AS(
      zrb::ReadScoreFile(tmp.WriteText("bad.score", "u1 zzz\n")),
      ParseError);
  CHECK(zrb::ReadScoreFile(tmp.WriteText("empty.score", "")).empty());
}

TEST_CASE("parsing is deterministic") {
  TempDir tmp("det");
  const std::string header = std::string(zrb::kItemFileHeader) + "\n";
  const auto p = tmp.WriteText(
      "d.item", header + "u1 0.0 0.1 A B C s1\nu2 0.0 0.1 A B C s2\n");
  const auto first = zrb::ParseItemFile(p);
  const auto second = zrb::ParseItemFile(p);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].utterance_id == second[i].utterance_id);
    CHECK(first[i].speaker_id == second[i].speaker_id);
  }
  CHECK(first[0].utterance_id == "u1");  // order preserved
  CHECK(first[1].utterance_id == "u2");
}

namespace {

void WriteSubmissionTree(const TempDir &tmp, bool with_semantic,
                         const std::string &meta) {
  tmp.WriteText("meta.json", meta);
  tmp.WriteText("phonetic/dev-clean/u1.txt", "1.0 2.0\n");
  tmp.WriteText("phonetic/dev-other/u2.txt", "1.0 2.0\n");
  tmp.WriteText("lexical/dev.score", "u1 0.5\n");
  tmp.WriteText("syntactic/dev.score", "u1 0.5\n");
  if (with_semantic) {
    tmp.WriteText("semantic/synthetic/dev/t1.txt", "1.0\n");
    tmp.WriteText("semantic/librispeech/dev/t1.txt", "1.0\n");
  }
}

}  // namespace

TEST_CASE("submission validation") {
  const std::set<zrb::Task> all = {zrb::Task::kPhonetic, zrb::Task::kLexical,
                                   zrb::Task::kSyntactic, zrb::Task::kSemantic};
  {
    TempDir tmp("sub_ok");
    WriteSubmissionTree(tmp, true, "{\"gpu_budget_hours\": 60}");
    const auto layout = zrb::ValidateSubmission(tmp.path(), all);
    CHECK(layout.tasks_present == all);
    CHECK(layout.gpu_budget_hours == 60.0);
  }
  {
    TempDir tmp("sub_missing");
    WriteSubmissionTree(tmp, false, "{\"gpu_budget_hours\": 0}");
    try {
      zrb::ValidateSubmission(tmp.path(), all);
      FAIL("expected missing semantic error");
    } catch (const std::runtime_error &e) {
      CHECK(std::string(e.what()).find("semantic") != std::string::npos);
    }
    // not required -> fine, and absent from the layout
    const auto layout = zrb::ValidateSubmission(
        tmp.path(), {zrb::Task::kPhonetic, zrb::Task::kLexical});
    CHECK(layout.tasks_present.count(zrb::Task::kSemantic) == 0);
    CHECK(layout.tasks_present.count(zrb::Task::kPhonetic) == 1);
  }
  {
    TempDir tmp("sub_budget");
    WriteSubmissionTree(tmp, true, "{\"gpu_budget_hours\": -1}");
    CHECK_THROWS(zrb::ValidateSubmission(tmp.path(), all));
  }
  {
    TempDir tmp("sub_meta");
    WriteSubmissionTree(tmp, true, "not json");
    CHECK_THROWS(zrb::ValidateSubmission(tmp.path(), all));
  }
  {
    TempDir tmp("sub_nometa");
    WriteSubmissionTree(tmp, true, "{}");
    CHECK_THROWS(zrb::ValidateSubmission(tmp.path(), all));
  }
}
