// zrb/lexsem.h
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
// Scoring of the three LM-level metrics: spot-the-word accuracy,
// acceptability accuracy, and similarity correlation against human
// judgments.

#ifndef ZRB_LEXSEM_H_
#define ZRB_LEXSEM_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "zrb/metric_core.h"
#include "zrb/types.h"

namespace zrb {

enum class JudgmentTask { kLexical, kSyntactic };

const char *JudgmentTaskName(JudgmentTask task);

struct JudgmentReport {
  JudgmentTask task = JudgmentTask::kLexical;
  double accuracy = 0.0;
  std::size_t n_pairs = 0;
  std::map<std::string, double> per_group;            // tagged pairs only
  std::map<std::string, std::size_t> per_group_size;
};

// Per pair: credit 1 if score(positive) > score(negative), 0.5 on a tie,
// 0 otherwise; accuracy is the mean credit (chance level 0.5).  Throws
// when a pair references an id missing from the score table, naming the
// pair.
JudgmentReport PairedJudgmentAccuracy(const std::vector<StimulusPair> &pairs,
                                      const ScoreTable &scores,
                                      JudgmentTask task);

struct DatasetSimilarity {
  double rho_x100 = 0.0;    // 100 * Spearman(human, model)
  std::size_t n_pairs = 0;  // collapsed pairs
};

struct SimilarityReport {
  std::map<std::string, DatasetSimilarity> per_dataset;
  double overall_rho_x100 = 0.0;  // pair-count-weighted mean
  std::size_t n_pairs = 0;
};

// Model similarity of a record is the cosine similarity of the two pooled
// embeddings.  Records sharing the same unordered word pair within a
// dataset collapse to the average of both model and human scores before
// ranking, so the report never depends on record order.  Throws on a
// missing embedding, a dataset with fewer than two collapsed pairs, or
// constant scores within a dataset.
SimilarityReport SsimiScore(
    const std::vector<SimilarityRecord> &records,
    const std::map<std::string, PooledEmbedding> &embeddings);

nlohmann::json JudgmentReportToJson(const JudgmentReport &report);
nlohmann::json SimilarityReportToJson(const SimilarityReport &report);

}  // namespace zrb

#endif  // ZRB_LEXSEM_H_
