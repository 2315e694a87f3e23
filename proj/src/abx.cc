// src/abx.cc
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

#include "zrb/abx.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>

#include "zrb/text_util.h"
#include "zrb/parallel.h"

namespace zrb {

const char *AbxModeName(AbxMode mode) {
  return mode == AbxMode::kWithin ? "within" : "across";
}

namespace {

using GroupKey = std::tuple<std::string, std::string, std::string,
                            std::string>;  // speaker, prev, next, phone

bool CellKeyLess(const AbxCell &a, const AbxCell &b) {
  return std::tie(a.speaker_ax, a.speaker_x, a.prev_phone, a.next_phone,
                  a.phone_a, a.phone_b) <
         std::tie(b.speaker_ax, b.speaker_x, b.prev_phone, b.next_phone,
                  b.phone_a, b.phone_b);
}

}  // namespace

CellSet BuildCells(const std::vector<AbxItem> &items, AbxMode mode) {
  // (speaker, context, phone) -> token indices, in input order.
  std::map<GroupKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto &it = items[i];
    groups[GroupKey{it.speaker_id, it.prev_phone, it.next_phone,
                    it.center_phone}]
        .push_back(i);
  }

  // context -> phone -> speaker -> tokens
  using PhoneMap =
      std::map<std::string, std::map<std::string, std::vector<std::size_t>>>;
  std::map<std::pair<std::string, std::string>, PhoneMap> by_context;
  for (const auto &[key, tokens] : groups) {
    const auto &[speaker, prev, next, phone] = key;
    by_context[{prev, next}][phone][speaker] = tokens;
  }

  CellSet out;
  for (const auto &[context, phones] : by_context) {
    for (const auto &[phone_a, speakers_a] : phones) {
      for (const auto &[phone_b, speakers_b] : phones) {
        if (phone_a == phone_b) continue;
        if (mode == AbxMode::kWithin) {
          for (const auto &[speaker, a_tokens] : speakers_a) {
            const auto itb = speakers_b.find(speaker);
            if (itb == speakers_b.end()) continue;
            if (a_tokens.size() < 2) {
              ++out.n_skipped;  // cannot draw distinct a and x
              continue;
            }
            AbxCell cell;
            cell.mode = mode;
            cell.prev_phone = context.first;
            cell.next_phone = context.second;
            cell.phone_a = phone_a;
            cell.phone_b = phone_b;
            cell.speaker_ax = speaker;
            cell.a_items = a_tokens;
            cell.b_items = itb->second;
            cell.x_items = a_tokens;
            out.cells.push_back(std::move(cell));
          }
        } else {
          for (const auto &[speaker1, a_tokens] : speakers_a) {
            const auto itb = speakers_b.find(speaker1);
            if (itb == speakers_b.end()) continue;
            for (const auto &[speaker2, x_tokens] : speakers_a) {
              if (speaker2 == speaker1) continue;
              AbxCell cell;
              cell.mode = mode;
              cell.prev_phone = context.first;
              cell.next_phone = context.second;
              cell.phone_a = phone_a;
              cell.phone_b = phone_b;
              cell.speaker_ax = speaker1;
              cell.speaker_x = speaker2;
              cell.a_items = a_tokens;
              cell.b_items = itb->second;
              cell.x_items = x_tokens;
              out.cells.push_back(std::move(cell));
            }
          }
        }
      }
    }
  }
  std::sort(out.cells.begin(), out.cells.end(), CellKeyLess);
  return out;
}

std::vector<FrameSpan> BuildSegments(const std::vector<AbxItem> &items,
                                     const FeatureMap &features) {
  std::vector<FrameSpan> segments(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto it = features.find(items[i].utterance_id);
    if (it == features.end())
      throw std::runtime_error("no feature file for utterance '" +
                               items[i].utterance_id + "'");
    segments[i] = Segment(it->second, items[i].onset_s, items[i].offset_s);
  }
  return segments;
}

double DtwCache::Distance(std::size_t item_a, std::size_t item_b,
                          const std::vector<FrameSpan> &segments,
                          FrameMetric metric) {
  // DTW is symmetric, so key on the unordered pair.
  const std::uint64_t lo = std::min(item_a, item_b);
  const std::uint64_t hi = std::max(item_a, item_b);
  const std::uint64_t key = (lo << 32) | hi;
  const auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const double d = DtwDistance(segments[item_a], segments[item_b], metric);
  memo_.emplace(key, d);
  return d;
}

double ScoreCell(const AbxCell &cell, const std::vector<FrameSpan> &segments,
                 FrameMetric metric, DtwCache *cache) {
  DtwCache local;
  DtwCache &memo = cache != nullptr ? *cache : local;
  double total = 0.0;  // sums of {0, 0.5, 1} are exact in binary
  std::size_t count = 0;
  for (const std::size_t a : cell.a_items) {
    for (const std::size_t b : cell.b_items) {
      for (const std::size_t x : cell.x_items) {
        if (x == a) continue;  // x must be a distinct exemplar of A
        const double dax = memo.Distance(a, x, segments, metric);
        const double dbx = memo.Distance(b, x, segments, metric);
        if (dax < dbx)
          total += 1.0;
        else if (dax == dbx)
          total += 0.5;
        ++count;
      }
    }
  }
  if (count == 0)
    throw std::logic_error("ABX cell with no scorable triplets");
  return total / static_cast<double>(count);
}

double ScoreCell(const AbxCell &cell, const std::vector<AbxItem> &items,
                 const FeatureMap &features, FrameMetric metric) {
  const auto segments = BuildSegments(items, features);
  return ScoreCell(cell, segments, metric, nullptr);
}

namespace {

std::size_t CountTriplets(const AbxCell &cell) {
  std::size_t count = 0;
  for (const std::size_t a : cell.a_items)
    for (const std::size_t x : cell.x_items)
      if (x != a) ++count;
  return count * cell.b_items.size();
}

}  // namespace

AbxReport Aggregate(const std::vector<AbxCell> &cells,
                    const std::vector<double> &scores, AbxMode mode,
                    std::size_t n_skipped) {
  if (cells.empty()) throw std::invalid_argument("no ABX cells to aggregate");
  if (scores.size() != cells.size())
    throw std::invalid_argument("cell/score count mismatch");

  AbxReport report;
  report.mode = mode;
  report.n_cells = cells.size();
  report.n_skipped = n_skipped;

  // (phone_a, phone_b, prev, next) -> speaker key -> error
  std::map<std::array<std::string, 4>, std::map<std::string, double>> level1;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto &c = cells[i];
    const double error = 1.0 - scores[i];
    std::string speaker_key = c.speaker_ax;
    if (mode == AbxMode::kAcross) {
      speaker_key.push_back('\x1f');
      speaker_key += c.speaker_x;
    }
    level1[{c.phone_a, c.phone_b, c.prev_phone, c.next_phone}]
        .emplace(speaker_key, error);

    AbxCellResult row;
    row.speaker_ax = c.speaker_ax;
    row.speaker_x = c.speaker_x;
    row.prev_phone = c.prev_phone;
    row.next_phone = c.next_phone;
    row.phone_a = c.phone_a;
    row.phone_b = c.phone_b;
    row.score = scores[i];
    row.n_triplets = CountTriplets(c);
    report.cells.push_back(std::move(row));
  }

  // ordered pair -> mean over contexts of (mean over speaker keys)
  std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>>
      level2;
  for (const auto &[key, speakers] : level1) {
    double sum = 0.0;
    for (const auto &[speaker, error] : speakers) sum += error;
    const double speaker_mean = sum / static_cast<double>(speakers.size());
    auto &[acc, n] = level2[{key[0], key[1]}];
    acc += speaker_mean;
    n += 1;
  }

  // symmetrize ordered directions into unordered pairs
  std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>>
      sym;
  for (const auto &[pair, acc] : level2) {
    auto key = pair.first < pair.second
                   ? pair
                   : std::make_pair(pair.second, pair.first);
    auto &[sum, n] = sym[key];
    sum += acc.first / static_cast<double>(acc.second);
    n += 1;
  }

  double total = 0.0;
  for (const auto &[pair, acc] : sym) {
    const double err = acc.first / static_cast<double>(acc.second);
    report.per_phone_pair.emplace(pair, err);
    total += err;
  }
  report.error_rate = total / static_cast<double>(sym.size());
  return report;
}

AbxReport RunAbx(const std::vector<AbxItem> &items, const FeatureMap &features,
                 AbxMode mode, FrameMetric metric, unsigned jobs) {
  CellSet set = BuildCells(items, mode);
  if (set.cells.empty())
    throw std::runtime_error("item file yields no ABX cells in mode '" +
                             std::string(AbxModeName(mode)) + "'");
  const auto segments = BuildSegments(items, features);
  std::vector<double> scores(set.cells.size());
  ParallelChunks(set.cells.size(), jobs,
                 [&](std::size_t begin, std::size_t end) {
                   DtwCache cache;  // per-worker memo
                   for (std::size_t i = begin; i < end; ++i)
                     scores[i] =
                         ScoreCell(set.cells[i], segments, metric, &cache);
                 });
  return Aggregate(set.cells, scores, mode, set.n_skipped);
}

std::string FormatAbxReportTsv(const AbxReport &report) {
  std::string out = "phone_a\tphone_b\terror\n";
  for (const auto &[pair, err] : report.per_phone_pair) {
    out += pair.first;
    out.push_back('\t');
    out += pair.second;
    out.push_back('\t');
    out += FormatDouble(err);
    out.push_back('\n');
  }
  out += AbxModeName(report.mode);
  out.push_back(' ');
  out += FormatDouble(report.error_rate);
  out.push_back(' ');
  out += std::to_string(report.n_cells);
  out.push_back('\n');
  return out;
}

nlohmann::json AbxReportToJson(const AbxReport &report) {
  nlohmann::json j;
  j["mode"] = AbxModeName(report.mode);
  j["error_rate"] = report.error_rate;
  j["n_cells"] = report.n_cells;
  j["n_skipped"] = report.n_skipped;
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto &[pair, err] : report.per_phone_pair)
    pairs[pair.first + "|" + pair.second] = err;
  j["per_phone_pair"] = std::move(pairs);
  nlohmann::json cells = nlohmann::json::array();
  for (const auto &c : report.cells) {
    nlohmann::json row;
    row["speaker"] = c.speaker_ax;
    if (!c.speaker_x.empty()) row["speaker_x"] = c.speaker_x;
    row["prev"] = c.prev_phone;
    row["next"] = c.next_phone;
    row["phone_a"] = c.phone_a;
    row["phone_b"] = c.phone_b;
    row["score"] = c.score;
    row["n_triplets"] = c.n_triplets;
    cells.push_back(std::move(row));
  }
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace zrb
