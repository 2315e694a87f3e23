// tools/zrbench.cc
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
// Command-line driver: runs each metric, the discrete-pipeline stages
// (clustering, quantization, n-gram LM), submission validation and the
// leaderboard renderer.  With identical inputs, config and seed every
// subcommand produces byte-identical report files for any --jobs value.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zrb/abx.h"
#include "zrb/text_util.h"
#include "zrb/corpus_io.h"
#include "zrb/leaderboard.h"
#include "zrb/lexsem.h"
#include "zrb/metric_core.h"
#include "zrb/parallel.h"
#include "zrb/quantize.h"
#include "zrb/types.h"
#include "zrb/unitlm.h"

namespace {

namespace fs = std::filesystem;

struct ReportMeta {
  std::string system = "system";
  std::string set = "dev";
  std::optional<double> budget;
};

void AddMetaFlags(CLI::App *cmd, ReportMeta *meta) {
  cmd->add_option("--system", meta->system, "System name recorded in the report");
  cmd->add_option("--set", meta->set, "Evaluation set (dev or test)")
      ->check(CLI::IsMember({"dev", "test"}));
  cmd->add_option("--budget", meta->budget,
                  "Training GPU-hour budget recorded in the report");
}

void ApplyMeta(nlohmann::json *j, const ReportMeta &meta) {
  (*j)["system"] = meta.system;
  (*j)["set"] = meta.set;
  if (meta.budget) (*j)["budget"] = *meta.budget;
}

void WriteJsonReport(const nlohmann::json &j, const fs::path &path) {
  zrb::WriteWholeFile(path, j.dump(2) + "\n");
}

zrb::FrameMetric MetricFromFlag(const std::string &name) {
  const auto metric = zrb::FrameMetricFromName(name);
  if (!metric) throw CLI::ValidationError("--metric", "unknown metric " + name);
  return *metric;
}

zrb::Pooling PoolingFromFlag(const std::string &name) {
  const auto pooling = zrb::PoolingFromName(name);
  if (!pooling)
    throw CLI::ValidationError("--pooling", "unknown pooling " + name);
  return *pooling;
}

// Frames of every utterance stacked in sorted utterance order.
std::vector<double> StackFrames(
    const std::map<std::string, zrb::FeatureSequence> &features,
    std::size_t *dim) {
  std::vector<double> stacked;
  *dim = 0;
  for (const auto &[id, seq] : features) {
    if (*dim == 0) *dim = seq.dim;
    if (seq.dim != *dim)
      throw std::runtime_error("utterance '" + id + "' has dimension " +
                               std::to_string(seq.dim) + ", expected " +
                               std::to_string(*dim));
    stacked.insert(stacked.end(), seq.data.begin(), seq.data.end());
  }
  if (stacked.empty()) throw std::runtime_error("no feature frames found");
  return stacked;
}

int RunEvalAbx(const std::string &items_path, const std::string &features_dir,
               const std::string &mode_name, const std::string &metric_name,
               double frame_shift, unsigned jobs, const std::string &out_tsv,
               const std::string &out_json, const std::string &subset,
               const ReportMeta &meta) {
  const auto items = zrb::ParseItemFile(items_path);
  const auto features = zrb::ReadFeatureDir(features_dir, frame_shift);
  const zrb::AbxMode mode =
      mode_name == "within" ? zrb::AbxMode::kWithin : zrb::AbxMode::kAcross;
  const auto report =
      zrb::RunAbx(items, features, mode, MetricFromFlag(metric_name), jobs);
  zrb::WriteWholeFile(out_tsv, zrb::FormatAbxReportTsv(report));
  if (!out_json.empty()) {
    nlohmann::json j = zrb::AbxReportToJson(report);
    j["task"] = "phonetic";
    j["subset"] = subset;
    j["metric"] = metric_name;
    j["frame_shift_s"] = frame_shift;
    ApplyMeta(&j, meta);
    WriteJsonReport(j, out_json);
  }
  std::printf("%s %s %zu\n", zrb::AbxModeName(report.mode),
              zrb::FormatDouble(report.error_rate).c_str(), report.n_cells);
  return 0;
}

int RunEvalJudgment(const std::string &pairs_path,
                    const std::string &scores_path, zrb::JudgmentTask task,
                    const std::string &out_json, const ReportMeta &meta) {
  const auto pairs = zrb::ParsePairTable(pairs_path);
  const auto scores = zrb::ReadScoreFile(scores_path);
  const auto report = zrb::PairedJudgmentAccuracy(pairs, scores, task);
  nlohmann::json j = zrb::JudgmentReportToJson(report);
  ApplyMeta(&j, meta);
  WriteJsonReport(j, out_json);
  std::printf("%s accuracy %s over %zu pairs\n",
              zrb::JudgmentTaskName(report.task),
              zrb::FormatDouble(report.accuracy).c_str(), report.n_pairs);
  return 0;
}

int RunEvalSemantic(const std::string &table_path,
                    const std::string &features_dir,
                    const std::string &pooling_name, double frame_shift,
                    const std::string &out_json, const std::string &subset,
                    const ReportMeta &meta) {
  const auto records = zrb::ParseSimilarityTable(table_path);
  const auto features = zrb::ReadFeatureDir(features_dir, frame_shift);
  const zrb::Pooling pooling = PoolingFromFlag(pooling_name);
  std::map<std::string, zrb::PooledEmbedding> embeddings;
  for (const auto &[id, seq] : features)
    embeddings.emplace(id, zrb::Pool(seq, pooling));
  const auto report = zrb::SsimiScore(records, embeddings);
  nlohmann::json j = zrb::SimilarityReportToJson(report);
  j["task"] = "semantic";
  j["subset"] = subset;
  j["pooling"] = pooling_name;
  ApplyMeta(&j, meta);
  WriteJsonReport(j, out_json);
  std::printf("semantic rho_x100 %s over %zu pairs\n",
              zrb::FormatDouble(report.overall_rho_x100).c_str(),
              report.n_pairs);
  return 0;
}

int RunCluster(const std::string &features_dir, std::size_t k,
               std::size_t max_iters, std::uint64_t seed, unsigned jobs,
               double frame_shift, const std::string &out_path) {
  const auto features = zrb::ReadFeatureDir(features_dir, frame_shift);
  std::size_t dim = 0;
  const auto frames = StackFrames(features, &dim);
  zrb::KmeansTrace trace;
  const auto book =
      zrb::KmeansFit(frames, dim, k, max_iters, seed, jobs, &trace);
  zrb::WriteCodebook(book, out_path);
  std::printf("k=%zu dim=%zu frames=%zu inertia=%s iterations=%zu%s\n", book.k,
              book.dim, frames.size() / dim,
              zrb::FormatDouble(book.inertia).c_str(), trace.iterations,
              trace.converged ? " (converged)" : "");
  return 0;
}

int RunQuantize(const std::string &features_dir,
                const std::string &codebook_path, bool dedup,
                double frame_shift, unsigned jobs, const std::string &out_path,
                const std::string &one_hot_dir) {
  const auto book = zrb::ReadCodebook(codebook_path);
  const auto features = zrb::ReadFeatureDir(features_dir, frame_shift);
  std::vector<const zrb::FeatureSequence *> ordered;
  ordered.reserve(features.size());
  for (const auto &[id, seq] : features) ordered.push_back(&seq);
  std::vector<zrb::UnitSequence> units(ordered.size());
  zrb::ParallelFor(ordered.size(), jobs, [&](std::size_t i) {
    units[i] = zrb::Discretize(*ordered[i], book, dedup);
  });
  zrb::WriteUnitFile(units, out_path);
  if (!one_hot_dir.empty()) {
    fs::create_directories(one_hot_dir);
    for (const auto &seq : units)
      zrb::WriteFeatureFile(
          zrb::OneHotFeatures(seq, book.k, frame_shift),
          fs::path(one_hot_dir) / (seq.utterance_id + ".txt"));
  }
  std::printf("quantized %zu utterances with k=%zu%s\n", units.size(), book.k,
              dedup ? " (dedup)" : "");
  return 0;
}

int RunLmTrain(const std::string &units_path, std::size_t order,
               double discount, std::size_t vocab_size,
               const std::string &out_path) {
  const auto corpus = zrb::ReadUnitFile(units_path);
  if (corpus.empty())
    throw std::runtime_error("empty unit file: " + units_path);
  std::size_t vocab = vocab_size;
  if (vocab == 0) {  // infer from the corpus
    std::uint32_t max_unit = 0;
    for (const auto &seq : corpus)
      for (const auto unit : seq.units) max_unit = std::max(max_unit, unit);
    vocab = static_cast<std::size_t>(max_unit) + 1;
  }
  const auto model = zrb::FitNgram(corpus, order, discount, vocab);
  model.Write(out_path);
  std::printf("order=%zu vocab=%zu discount=%s sequences=%zu\n", model.order(),
              model.vocab_size(), zrb::FormatDouble(model.discount()).c_str(),
              corpus.size());
  return 0;
}

int RunLmScore(const std::string &model_path, const std::string &units_path,
               bool normalize, const std::string &out_path,
               const std::string &report_path) {
  const auto model = zrb::NGramModel::Read(model_path);
  const auto table = zrb::ScoreUnitFile(model, units_path, normalize);
  zrb::WriteScoreFile(table, out_path);
  if (!report_path.empty()) {
    nlohmann::json j;
    j["model"] = model_path;
    j["normalize"] = normalize;
    j["n_utterances"] = table.size();
    WriteJsonReport(j, report_path);
  }
  std::printf("scored %zu utterances (normalize=%s)\n", table.size(),
              normalize ? "true" : "false");
  return 0;
}

int RunValidate(const std::string &root, const std::string &require) {
  std::set<zrb::Task> required;
  for (const auto &name : CLI::detail::split(require, ',')) {
    const auto task = zrb::TaskFromName(name);
    if (!task) throw std::runtime_error("unknown task '" + name + "'");
    required.insert(*task);
  }
  const auto layout = zrb::ValidateSubmission(root, required);
  std::string tasks;
  for (const auto task : layout.tasks_present) {
    if (!tasks.empty()) tasks.push_back(',');
    tasks += zrb::TaskName(task);
  }
  std::printf("valid submission: tasks=[%s] gpu_budget_hours=%s\n",
              tasks.c_str(),
              zrb::FormatDouble(layout.gpu_budget_hours).c_str());
  return 0;
}

int RunLeaderboard(const std::vector<std::string> &report_paths,
                   const std::string &out_path) {
  std::vector<nlohmann::json> reports;
  reports.reserve(report_paths.size());
  for (const auto &path : report_paths) {
    try {
      reports.push_back(nlohmann::json::parse(zrb::ReadWholeFile(path)));
    } catch (const nlohmann::json::exception &e) {
      throw std::runtime_error("cannot parse report " + path + ": " +
                               e.what());
    }
  }
  const std::string table =
      zrb::RenderLeaderboard(zrb::RowsFromReports(reports));
  if (!out_path.empty()) zrb::WriteWholeFile(out_path, table);
  std::fputs(table.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "zrbench: zero-shot benchmark engine for spoken language modelling"};
  app.require_subcommand(1);

  zrb::EvalConfig config;
  std::string metric_name = "angular";
  std::string pooling_name = "mean";

  // eval-abx
  auto *eval_abx = app.add_subcommand(
      "eval-abx", "Triphone ABX discriminability from an item file");
  std::string abx_items, abx_features, abx_mode = "within";
  std::string abx_out = "abx_report.tsv", abx_json;
  std::string abx_subset = "clean";
  ReportMeta abx_meta;
  eval_abx->add_option("--items", abx_items, "ABX item file")->required();
  eval_abx->add_option("--features", abx_features, "Feature directory")
      ->required();
  eval_abx->add_option("--mode", abx_mode, "within or across")
      ->check(CLI::IsMember({"within", "across"}));
  eval_abx->add_option("--metric", metric_name, "Frame metric")
      ->check(CLI::IsMember({"angular", "cosine", "euclidean"}));
  eval_abx->add_option("--frame-shift", config.frame_shift_s,
                       "Seconds per frame");
  eval_abx->add_option("--jobs", config.jobs, "Worker count")
      ->check(CLI::PositiveNumber);
  eval_abx->add_option("--out", abx_out, "TSV report path");
  eval_abx->add_option("--json", abx_json, "Optional JSON report path");
  eval_abx->add_option("--subset", abx_subset,
                       "Leaderboard subset tag (clean or other)")
      ->check(CLI::IsMember({"clean", "other"}));
  AddMetaFlags(eval_abx, &abx_meta);

  // eval-lexical / eval-syntactic
  std::string lex_pairs, lex_scores, lex_out = "lexical_report.json";
  ReportMeta lex_meta;
  auto *eval_lexical = app.add_subcommand(
      "eval-lexical", "Spot-the-word accuracy from a pair table");
  eval_lexical->add_option("--pairs", lex_pairs, "Gold pair table (TSV)")
      ->required();
  eval_lexical->add_option("--scores", lex_scores, "Score file")->required();
  eval_lexical->add_option("--out", lex_out, "JSON report path");
  AddMetaFlags(eval_lexical, &lex_meta);

  std::string syn_pairs, syn_scores, syn_out = "syntactic_report.json";
  ReportMeta syn_meta;
  auto *eval_syntactic = app.add_subcommand(
      "eval-syntactic", "Acceptability accuracy from a pair table");
  eval_syntactic->add_option("--pairs", syn_pairs, "Gold pair table (TSV)")
      ->required();
  eval_syntactic->add_option("--scores", syn_scores, "Score file")->required();
  eval_syntactic->add_option("--out", syn_out, "JSON report path");
  AddMetaFlags(eval_syntactic, &syn_meta);

  // eval-semantic
  std::string sem_table, sem_features, sem_out = "semantic_report.json";
  std::string sem_subset = "synthetic";
  ReportMeta sem_meta;
  auto *eval_semantic = app.add_subcommand(
      "eval-semantic", "Similarity correlation against human judgments");
  eval_semantic->add_option("--table", sem_table, "Gold similarity table (TSV)")
      ->required();
  eval_semantic->add_option("--features", sem_features, "Feature directory")
      ->required();
  eval_semantic->add_option("--pooling", pooling_name, "Pooling")
      ->check(CLI::IsMember({"mean", "max", "min"}));
  eval_semantic->add_option("--frame-shift", config.frame_shift_s,
                            "Seconds per frame");
  eval_semantic->add_option("--out", sem_out, "JSON report path");
  eval_semantic->add_option("--subset", sem_subset,
                            "Leaderboard subset tag (synthetic or librispeech)")
      ->check(CLI::IsMember({"synthetic", "librispeech"}));
  AddMetaFlags(eval_semantic, &sem_meta);

  // cluster
  std::string cluster_features, cluster_out;
  std::size_t cluster_k = 50, cluster_iters = 100;
  auto *cluster = app.add_subcommand(
      "cluster", "Fit a k-means codebook over a feature directory");
  cluster->add_option("--features", cluster_features, "Feature directory")
      ->required();
  cluster->add_option("--k", cluster_k, "Number of clusters")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--max-iters", cluster_iters, "Maximum Lloyd rounds")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--seed", config.seed, "RNG seed");
  cluster->add_option("--jobs", config.jobs, "Worker count")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--frame-shift", config.frame_shift_s,
                      "Seconds per frame");
  cluster->add_option("--out", cluster_out, "Codebook output path")
      ->required();

  // quantize
  std::string quant_features, quant_codebook, quant_out, quant_one_hot;
  bool quant_dedup = false;
  auto *quantize = app.add_subcommand(
      "quantize", "Discretize features into unit sequences");
  quantize->add_option("--features", quant_features, "Feature directory")
      ->required();
  quantize->add_option("--codebook", quant_codebook, "Codebook path")
      ->required();
  quantize->add_flag("--dedup", quant_dedup,
                     "Collapse runs of identical adjacent units");
  quantize->add_option("--frame-shift", config.frame_shift_s,
                       "Seconds per frame");
  quantize->add_option("--jobs", config.jobs, "Worker count")
      ->check(CLI::PositiveNumber);
  quantize->add_option("--out", quant_out, "Unit file output path")
      ->required();
  quantize->add_option("--one-hot-dir", quant_one_hot,
                       "Also write one-hot feature files here");

  // lm-train
  std::string lm_units, lm_out;
  std::size_t lm_order = 3, lm_vocab = 0;
  double lm_discount = 0.75;
  auto *lm_train = app.add_subcommand(
      "lm-train", "Fit an n-gram LM over unit sequences");
  lm_train->add_option("--units", lm_units, "Unit file")->required();
  lm_train->add_option("--order", lm_order, "N-gram order")
      ->check(CLI::PositiveNumber);
  lm_train->add_option("--discount", lm_discount, "Absolute discount in (0,1)");
  lm_train->add_option("--vocab-size", lm_vocab,
                       "Unit vocabulary size (0 = infer as max unit + 1)");
  lm_train->add_option("--out", lm_out, "Model output path")->required();

  // lm-score
  std::string score_model, score_units, score_out, score_report;
  auto *lm_score = app.add_subcommand(
      "lm-score", "Pseudo-log-probability per utterance of a unit file");
  lm_score->add_option("--model", score_model, "Model path")->required();
  lm_score->add_option("--units", score_units, "Unit file")->required();
  lm_score->add_flag("--normalize", config.normalize_lm,
                     "Divide by the number of scored positions");
  lm_score->add_option("--out", score_out, "Score file output path")
      ->required();
  lm_score->add_option("--report", score_report,
                       "Optional JSON run manifest path");

  // validate
  std::string validate_root;
  std::string validate_require = "phonetic,lexical,syntactic,semantic";
  auto *validate =
      app.add_subcommand("validate", "Check a submission directory layout");
  validate->add_option("--root", validate_root, "Submission root")->required();
  validate->add_option("--require", validate_require,
                       "Comma-separated required tasks");

  // leaderboard
  std::vector<std::string> board_reports;
  std::string board_out;
  auto *leaderboard = app.add_subcommand(
      "leaderboard", "Render a markdown table from JSON reports");
  leaderboard->add_option("--reports", board_reports, "JSON report files")
      ->required()
      ->expected(-1);
  leaderboard->add_option("--out", board_out, "Markdown output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_abx->parsed())
      return RunEvalAbx(abx_items, abx_features, abx_mode, metric_name,
                        config.frame_shift_s, config.jobs, abx_out, abx_json,
                        abx_subset, abx_meta);
    if (eval_lexical->parsed())
      return RunEvalJudgment(lex_pairs, lex_scores, zrb::JudgmentTask::kLexical,
                             lex_out, lex_meta);
    if (eval_syntactic->parsed())
      return RunEvalJudgment(syn_pairs, syn_scores,
                             zrb::JudgmentTask::kSyntactic, syn_out, syn_meta);
    if (eval_semantic->parsed())
      return RunEvalSemantic(sem_table, sem_features, pooling_name,
                             config.frame_shift_s, sem_out, sem_subset,
                             sem_meta);
    if (cluster->parsed())
      return RunCluster(cluster_features, cluster_k, cluster_iters,
                        config.seed, config.jobs, config.frame_shift_s,
                        cluster_out);
    if (quantize->parsed())
      return RunQuantize(quant_features, quant_codebook, quant_dedup,
                         config.frame_shift_s, config.jobs, quant_out,
                         quant_one_hot);
    if (lm_train->parsed())
      return RunLmTrain(lm_units, lm_order, lm_discount, lm_vocab, lm_out);
    if (lm_score->parsed())
      return RunLmScore(score_model, score_units, config.normalize_lm,
                        score_out, score_report);
    if (validate->parsed())
      return RunValidate(validate_root, validate_require);
    if (leaderboard->parsed())
      return RunLeaderboard(board_reports, board_out);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
