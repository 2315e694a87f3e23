// src/lexsem.cc
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

#include "zrb/lexsem.h"

#include <algorithm>
#include <stdexcept>

namespace zrb {

const char *JudgmentTaskName(JudgmentTask task) {
  return task == JudgmentTask::kLexical ? "lexical" : "syntactic";
}

JudgmentReport PairedJudgmentAccuracy(const std::vector<StimulusPair> &pairs,
                                      const ScoreTable &scores,
                                      JudgmentTask task) {
  if (pairs.empty())
    throw std::invalid_argument("no stimulus pairs to judge");

  const auto lookup = [&scores](const std::string &id,
                                const std::string &pair_id) {
    const auto it = scores.find(id);
    if (it == scores.end())
      throw std::runtime_error("utterance '" + id +
                               "' of pair '" + pair_id +
                               "' is missing from the score table");
    return it->second;
  };

  JudgmentReport report;
  report.task = task;
  report.n_pairs = pairs.size();
  std::map<std::string, std::pair<double, std::size_t>> group_acc;
  double total = 0.0;  // credits are multiples of 0.5; the sum is exact
  for (const auto &pair : pairs) {
    const double pos = lookup(pair.positive_id, pair.pair_id);
    const double neg = lookup(pair.negative_id, pair.pair_id);
    const double credit = pos > neg ? 1.0 : (pos == neg ? 0.5 : 0.0);
    total += credit;
    if (pair.group) {
      auto &[sum, n] = group_acc[*pair.group];
      sum += credit;
      n += 1;
    }
  }
  report.accuracy = total / static_cast<double>(pairs.size());
  for (const auto &[group, acc] : group_acc) {
    report.per_group.emplace(group,
                             acc.first / static_cast<double>(acc.second));
    report.per_group_size.emplace(group, acc.second);
  }
  return report;
}

SimilarityReport SsimiScore(
    const std::vector<SimilarityRecord> &records,
    const std::map<std::string, PooledEmbedding> &embeddings) {
  if (records.empty())
    throw std::invalid_argument("no similarity records to score");

  const auto lookup = [&embeddings](const std::string &token) -> const
      std::vector<double> & {
        const auto it = embeddings.find(token);
        if (it == embeddings.end())
          throw std::runtime_error("token '" + token +
                                   "' has no pooled embedding");
        return it->second.vector;
      };

  // dataset -> unordered word pair -> (human scores, model scores)
  using PairKey = std::pair<std::string, std::string>;
  std::map<std::string,
           std::map<PairKey, std::pair<std::vector<double>,
                                       std::vector<double>>>>
      collapsed;
  for (const auto &rec : records) {
    const double model =
        CosineSimilarity(lookup(rec.token_a_id), lookup(rec.token_b_id));
    PairKey key = rec.word_a < rec.word_b
                      ? PairKey{rec.word_a, rec.word_b}
                      : PairKey{rec.word_b, rec.word_a};
    auto &[human_values, model_values] = collapsed[rec.dataset][key];
    human_values.push_back(rec.human_score);
    model_values.push_back(model);
  }

  // Duplicate scores average in sorted value order so the report never
  // depends on record order.
  const auto mean_sorted = [](std::vector<double> values) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  };

  SimilarityReport report;
  double weighted = 0.0;
  std::size_t total_pairs = 0;
  for (const auto &[dataset, pairs] : collapsed) {
    if (pairs.size() < 2)
      throw std::runtime_error("dataset '" + dataset +
                               "' has fewer than two distinct word pairs");
    std::vector<double> human, model;
    human.reserve(pairs.size());
    model.reserve(pairs.size());
    for (const auto &[key, values] : pairs) {
      human.push_back(mean_sorted(values.first));
      model.push_back(mean_sorted(values.second));
    }
    double rho = 0.0;
    try {
      rho = Spearman(human, model);
    } catch (const std::domain_error &e) {
      throw std::runtime_error("dataset '" + dataset + "': " + e.what());
    }
    const DatasetSimilarity ds{100.0 * rho, pairs.size()};
    report.per_dataset.emplace(dataset, ds);
    weighted += ds.rho_x100 * static_cast<double>(ds.n_pairs);
    total_pairs += ds.n_pairs;
  }
  report.n_pairs = total_pairs;
  report.overall_rho_x100 = weighted / static_cast<double>(total_pairs);
  return report;
}

nlohmann::json JudgmentReportToJson(const JudgmentReport &report) {
  nlohmann::json j;
  j["task"] = JudgmentTaskName(report.task);
  j["accuracy"] = report.accuracy;
  j["n_pairs"] = report.n_pairs;
  nlohmann::json groups = nlohmann::json::object();
  for (const auto &[group, acc] : report.per_group) {
    nlohmann::json g;
    g["accuracy"] = acc;
    g["n_pairs"] = report.per_group_size.at(group);
    groups[group] = std::move(g);
  }
  j["per_group"] = std::move(groups);
  return j;
}

nlohmann::json SimilarityReportToJson(const SimilarityReport &report) {
  nlohmann::json j;
  j["overall_rho_x100"] = report.overall_rho_x100;
  j["n_pairs"] = report.n_pairs;
  nlohmann::json datasets = nlohmann::json::object();
  for (const auto &[dataset, ds] : report.per_dataset) {
    nlohmann::json d;
    d["rho_x100"] = ds.rho_x100;
    d["n_pairs"] = ds.n_pairs;
    datasets[dataset] = std::move(d);
  }
  j["per_dataset"] = std::move(datasets);
  return j;
}

}  // namespace zrb
