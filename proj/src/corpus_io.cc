// src/corpus_io.cc
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

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "zrb/text_util.h"

namespace zrb {

namespace {

constexpr const char *kPairTableHeader = "pair_id\tpositive\tnegative\tgroup";
constexpr const char *kSimilarityTableHeader =
    "token_a\ttoken_b\tword_a\tword_b\tscore\tdataset";

// Strict single-space tokenization: runs of spaces or border spaces
// produce an empty field, which callers reject.
std::vector<std::string_view> SpaceFields(std::string_view line) {
  return SplitFields(line, ' ');
}

double ParseFiniteDouble(const std::filesystem::path &path, std::size_t line,
                         std::string_view token, const char *what) {
  const auto value = ParseDouble(token);
  if (!value)
    throw ParseError(path.string(), line,
                     std::string("cannot parse ") + what + " '" +
                         std::string(token) + "'");
  if (!std::isfinite(*value))
    throw ParseError(path.string(), line,
                     std::string("non-finite ") + what + " '" +
                         std::string(token) + "'");
  return *value;
}

}  // namespace

FeatureSequence ReadFeatureFile(const std::filesystem::path &path,
                                double frame_shift_s) {
  if (!(frame_shift_s > 0.0))
    throw std::invalid_argument("frame shift must be positive");
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  if (lines.empty())
    throw ParseError(path.string(), 1, "empty feature file");

  FeatureSequence seq;
  seq.utterance_id = path.stem().string();
  seq.frame_shift_s = frame_shift_s;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto fields = SpaceFields(lines[li]);
    if (fields.size() == 1 && fields[0].empty())
      throw ParseError(path.string(), li + 1, "empty line in feature file");
    if (li == 0) {
      seq.dim = fields.size();
    } else if (fields.size() != seq.dim) {
      throw ParseError(path.string(), li + 1,
                       "ragged row: expected " + std::to_string(seq.dim) +
                           " columns, got " + std::to_string(fields.size()));
    }
    for (const auto field : fields)
      seq.data.push_back(
          ParseFiniteDouble(path, li + 1, field, "feature value"));
  }
  return seq;
}

void WriteFeatureFile(const FeatureSequence &seq,
                      const std::filesystem::path &path) {
  seq.Validate();
  std::string out;
  out.reserve(seq.data.size() * 8);
  const std::size_t frames = seq.frames();
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t d = 0; d < seq.dim; ++d) {
      if (d > 0) out.push_back(' ');
      out += FormatDouble(seq.data[t * seq.dim + d]);
    }
    out.push_back('\n');
  }
  WriteWholeFile(path, out);
}

std::map<std::string, FeatureSequence> ReadFeatureDir(
    const std::filesystem::path &dir, double frame_shift_s) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("feature directory not found: " + dir.string());
  std::vector<std::filesystem::path> paths;
  for (const auto &entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  std::map<std::string, FeatureSequence> out;
  for (const auto &p : paths)
    out.emplace(p.stem().string(), ReadFeatureFile(p, frame_shift_s));
  return out;
}

std::vector<AbxItem> ParseItemFile(const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != kItemFileHeader)
    throw ParseError(path.string(), 1,
                     std::string("missing or incorrect item header; expected '") +
                         kItemFileHeader + "'");
  std::vector<AbxItem> items;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = SpaceFields(lines[li]);
    if (fields.size() != 7 ||
        std::any_of(fields.begin(), fields.end(),
                    [](std::string_view f) { return f.empty(); }))
      throw ParseError(path.string(), li + 1,
                       "expected 7 space-separated fields, got " +
                           std::to_string(fields.size()));
    AbxItem item;
    item.utterance_id = std::string(fields[0]);
    item.onset_s = ParseFiniteDouble(path, li + 1, fields[1], "onset");
    item.offset_s = ParseFiniteDouble(path, li + 1, fields[2], "offset");
    item.center_phone = std::string(fields[3]);
    item.prev_phone = std::string(fields[4]);
    item.next_phone = std::string(fields[5]);
    item.speaker_id = std::string(fields[6]);
    if (item.onset_s < 0.0)
      throw ParseError(path.string(), li + 1, "negative onset");
    if (item.onset_s >= item.offset_s)
      throw ParseError(path.string(), li + 1,
                       "onset >= offset at line " + std::to_string(li + 1));
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<StimulusPair> ParsePairTable(const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != kPairTableHeader)
    throw ParseError(path.string(), 1,
                     std::string("missing or incorrect pair-table header; "
                                 "expected '") +
                         "pair_id<TAB>positive<TAB>negative<TAB>group'");
  std::vector<StimulusPair> pairs;
  std::unordered_set<std::string> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = SplitFields(lines[li], '\t');
    if (fields.size() != 4)
      throw ParseError(path.string(), li + 1,
                       "expected 4 tab-separated columns, got " +
                           std::to_string(fields.size()));
    StimulusPair pair;
    pair.pair_id = std::string(fields[0]);
    pair.positive_id = std::string(fields[1]);
    pair.negative_id = std::string(fields[2]);
    if (!fields[3].empty()) pair.group = std::string(fields[3]);
    if (pair.pair_id.empty() || pair.positive_id.empty() ||
        pair.negative_id.empty())
      throw ParseError(path.string(), li + 1, "empty field in pair row");
    if (pair.positive_id == pair.negative_id)
      throw ParseError(path.string(), li + 1,
                       "positive and negative ids are equal in pair '" +
                           pair.pair_id + "'");
    if (!seen.insert(pair.pair_id).second)
      throw ParseError(path.string(), li + 1,
                       "duplicate pair_id '" + pair.pair_id + "'");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<SimilarityRecord> ParseSimilarityTable(
    const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  if (lines.empty() || lines[0] != kSimilarityTableHeader)
    throw ParseError(path.string(), 1,
                     "missing or incorrect similarity-table header");
  std::vector<SimilarityRecord> records;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = SplitFields(lines[li], '\t');
    if (fields.size() != 6)
      throw ParseError(path.string(), li + 1,
                       "expected 6 tab-separated columns, got " +
                           std::to_string(fields.size()));
    SimilarityRecord rec;
    rec.token_a_id = std::string(fields[0]);
    rec.token_b_id = std::string(fields[1]);
    rec.word_a = std::string(fields[2]);
    rec.word_b = std::string(fields[3]);
    rec.human_score = ParseFiniteDouble(path, li + 1, fields[4], "score");
    rec.dataset = std::string(fields[5]);
    if (rec.token_a_id.empty() || rec.token_b_id.empty() ||
        rec.word_a.empty() || rec.word_b.empty())
      throw ParseError(path.string(), li + 1, "empty field in similarity row");
    if (rec.dataset.empty())
      throw ParseError(path.string(), li + 1, "empty dataset field");
    if (rec.human_score < 0.0 || rec.human_score > 10.0)
      throw ParseError(path.string(), li + 1,
                       "score outside [0,10]: " + std::string(fields[4]));
    records.push_back(std::move(rec));
  }
  return records;
}

ScoreTable ReadScoreFile(const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  ScoreTable table;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto fields = SpaceFields(lines[li]);
    if (fields.size() != 2 || fields[0].empty())
      throw ParseError(path.string(), li + 1,
                       "expected '<utterance_id> <score>'");
    const double value =
        ParseFiniteDouble(path, li + 1, fields[1], "score");
    if (!table.emplace(std::string(fields[0]), value).second)
      throw ParseError(path.string(), li + 1,
                       "duplicate utterance id '" + std::string(fields[0]) +
                           "'");
  }
  return table;
}

void WriteScoreFile(const ScoreTable &scores,
                    const std::filesystem::path &path) {
  std::string out;
  for (const auto &[id, value] : scores) {
    out += id;
    out.push_back(' ');
    out += FormatDouble(value);
    out.push_back('\n');
  }
  WriteWholeFile(path, out);
}

const char *TaskName(Task task) {
  switch (task) {
    case Task::kPhonetic:
      return "phonetic";
    case Task::kLexical:
      return "lexical";
    case Task::kSyntactic:
      return "syntactic";
    case Task::kSemantic:
      return "semantic";
  }
  return "phonetic";
}

std::optional<Task> TaskFromName(std::string_view name) {
  if (name == "phonetic") return Task::kPhonetic;
  if (name == "lexical") return Task::kLexical;
  if (name == "syntactic") return Task::kSyntactic;
  if (name == "semantic") return Task::kSemantic;
  return std::nullopt;
}

namespace {

bool DirHasFeatureFiles(const std::filesystem::path &dir) {
  if (!std::filesystem::is_directory(dir)) return false;
  for (const auto &entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      return true;
  return false;
}

bool TaskPresent(const std::filesystem::path &root, Task task,
                 std::string *missing) {
  const auto need_dir = [&](const std::filesystem::path &p) {
    if (DirHasFeatureFiles(p)) return true;
    *missing = p.string();
    return false;
  };
  const auto need_file = [&](const std::filesystem::path &p) {
    if (std::filesystem::is_regular_file(p)) return true;
    *missing = p.string();
    return false;
  };
  switch (task) {
    case Task::kPhonetic:
      return need_dir(root / "phonetic" / "dev-clean") &&
             need_dir(root / "phonetic" / "dev-other");
    case Task::kLexical:
      return need_file(root / "lexical" / "dev.score");
    case Task::kSyntactic:
      return need_file(root / "syntactic" / "dev.score");
    case Task::kSemantic:
      return need_dir(root / "semantic" / "synthetic" / "dev") &&
             need_dir(root / "semantic" / "librispeech" / "dev");
  }
  return false;
}

}  // namespace

SubmissionLayout ValidateSubmission(const std::filesystem::path &root,
                                    const std::set<Task> &required) {
  if (!std::filesystem::is_directory(root))
    throw std::runtime_error("submission root not found: " + root.string());

  SubmissionLayout layout;
  layout.root = root;

  const auto meta_path = root / "meta.json";
  if (!std::filesystem::is_regular_file(meta_path))
    throw std::runtime_error("missing metadata file: " + meta_path.string());
  try {
    layout.metadata = nlohmann::json::parse(ReadWholeFile(meta_path));
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error("unparseable metadata " + meta_path.string() +
                             ": " + e.what());
  }
  if (!layout.metadata.contains("gpu_budget_hours"))
    throw std::runtime_error("metadata missing 'gpu_budget_hours': " +
                             meta_path.string());
  const auto &budget = layout.metadata["gpu_budget_hours"];
  if (budget.is_number()) {
    layout.gpu_budget_hours = budget.get<double>();
  } else if (budget.is_string()) {
    const auto parsed = ParseDouble(budget.get<std::string>());
    if (!parsed)
      throw std::runtime_error("unparseable gpu_budget_hours value '" +
                               budget.get<std::string>() + "'");
    layout.gpu_budget_hours = *parsed;
  } else {
    throw std::runtime_error("gpu_budget_hours must be a number");
  }
  if (!(layout.gpu_budget_hours >= 0.0) ||
      !std::isfinite(layout.gpu_budget_hours))
    throw std::runtime_error("gpu_budget_hours must be nonnegative, got " +
                             FormatDouble(layout.gpu_budget_hours));

  for (Task task : {Task::kPhonetic, Task::kLexical, Task::kSyntactic,
                    Task::kSemantic}) {
    std::string missing;
    if (TaskPresent(root, task, &missing)) {
      layout.tasks_present.insert(task);
    } else if (required.count(task)) {
      throw std::runtime_error(std::string("required task '") +
                               TaskName(task) + "' is incomplete: missing " +
                               missing);
    }
  }
  return layout;
}

}  // namespace zrb
