// zrb/corpus_io.h
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
//
// Readers and writers for the on-disk formats: feature files, ABX item
// files, gold pair/similarity tables, score files and submission trees.
// All formats are UTF-8 text with LF newlines.

#ifndef ZRB_CORPUS_IO_H_
#define ZRB_CORPUS_IO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "zrb/types.h"

namespace zrb {

// Fixed first line of an ABX item file.
inline constexpr const char *kItemFileHeader =
    "#file onset offset #phone prev-phone next-phone speaker";

// One frame per line, single-space-separated decimal floats, no header.
// The utterance id is the file stem; frame_shift_s is supplied by the
// caller, never stored in the file.
FeatureSequence ReadFeatureFile(const std::filesystem::path &path,
                                double frame_shift_s);

// Values are written in shortest round-trip decimal form, so a read of the
// written file reproduces the matrix exactly.
void WriteFeatureFile(const FeatureSequence &seq,
                      const std::filesystem::path &path);

// Every *.txt file in dir, keyed by file stem, read in sorted name order.
std::map<std::string, FeatureSequence> ReadFeatureDir(
    const std::filesystem::path &dir, double frame_shift_s);

std::vector<AbxItem> ParseItemFile(const std::filesystem::path &path);

// TSV with header "pair_id\tpositive\tnegative\tgroup"; group may be empty.
std::vector<StimulusPair> ParsePairTable(const std::filesystem::path &path);

// TSV with header "token_a\ttoken_b\tword_a\tword_b\tscore\tdataset".
std::vector<SimilarityRecord> ParseSimilarityTable(
    const std::filesystem::path &path);

// Lines "<utterance_id> <decimal float>".
ScoreTable ReadScoreFile(const std::filesystem::path &path);
void WriteScoreFile(const ScoreTable &scores,
                    const std::filesystem::path &path);

enum class Task { kPhonetic, kLexical, kSyntactic, kSemantic };

const char *TaskName(Task task);
std::optional<Task> TaskFromName(std::string_view name);

// On-disk layout of a benchmark submission:
//   meta.json                          gpu_budget_hours and free metadata
//   phonetic/{dev-clean,dev-other}/    feature files
//   lexical/dev.score                  score file
//   syntactic/dev.score                score file
//   semantic/{synthetic,librispeech}/dev/   feature files
struct SubmissionLayout {
  std::filesystem::path root;
  std::set<Task> tasks_present;
  nlohmann::json metadata;
  double gpu_budget_hours = 0.0;
};

// Checks that every required task is present and complete and that
// meta.json parses with a nonnegative gpu_budget_hours.  Throws
// std::runtime_error naming the first missing or malformed piece.
SubmissionLayout ValidateSubmission(const std::filesystem::path &root,
                                    const std::set<Task> &required);

}  // namespace zrb

#endif  // ZRB_CORPUS_IO_H_
