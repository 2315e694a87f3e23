// zrb/abx.h
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
// Triphone ABX discriminability: for two categories A and B with the same
// surrounding context, the probability that an exemplar x of A is closer
// (by DTW distance) to another A exemplar than to a B exemplar.  Reported
// as an error rate, aggregated over speakers, contexts and phone pairs.

#ifndef ZRB_ABX_H_
#define ZRB_ABX_H_

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "zrb/metric_core.h"
#include "zrb/types.h"

namespace zrb {

enum class AbxMode { kWithin, kAcross };

const char *AbxModeName(AbxMode mode);

// One scoring cell: a fixed (context, ordered phone pair, speaker key).
// a_items/b_items/x_items hold indices into the original item list.
// Within mode: a, b and x share speaker_ax and a_items == x_items.
// Across mode: x comes from speaker_x != speaker_ax.
struct AbxCell {
  AbxMode mode = AbxMode::kWithin;
  std::string prev_phone;
  std::string next_phone;
  std::string phone_a;
  std::string phone_b;
  std::string speaker_ax;
  std::string speaker_x;  // empty in within mode
  std::vector<std::size_t> a_items;
  std::vector<std::size_t> b_items;
  std::vector<std::size_t> x_items;
};

struct CellSet {
  std::vector<AbxCell> cells;  // sorted by cell key
  // Within-mode candidates dropped because category A had a single token.
  std::size_t n_skipped = 0;
};

// Within mode emits one cell per (speaker, context, ordered phone pair
// (p1,p2)) where the speaker has >= 2 tokens of (context,p1) and >= 1 of
// (context,p2).  Across mode emits one cell per (speaker s1, speaker
// s2 != s1, context, ordered pair) where s1 has >= 1 token of both phones
// and s2 has >= 1 token of p1.  Cells come out in lexicographic key order.
CellSet BuildCells(const std::vector<AbxItem> &items, AbxMode mode);

using FeatureMap = std::map<std::string, FeatureSequence>;

// Extracted segment per item, aligned with the item list by index.
// Borrows frame storage from the feature map.
std::vector<FrameSpan> BuildSegments(const std::vector<AbxItem> &items,
                                     const FeatureMap &features);

// Memo of DTW distances keyed by unordered item index pair.  One instance
// per worker; hits only skip recomputation, never change values.
class DtwCache {
 public:
  // Returns the cached distance or computes and stores it.
  double Distance(std::size_t item_a, std::size_t item_b,
                  const std::vector<FrameSpan> &segments, FrameMetric metric);

 private:
  std::unordered_map<std::uint64_t, double> memo_;
};

// Mean credit over all triplets (a, b, x) of the cell, skipping triplets
// where a and x are the same token: 1 if dtw(a,x) < dtw(b,x), 0.5 on a
// tie, 0 otherwise.  Credits are multiples of 0.5, so the sum is exact
// and the mean does not depend on enumeration order.
double ScoreCell(const AbxCell &cell, const std::vector<FrameSpan> &segments,
                 FrameMetric metric, DtwCache *cache);

// Convenience overload resolving features itself.
double ScoreCell(const AbxCell &cell, const std::vector<AbxItem> &items,
                 const FeatureMap &features, FrameMetric metric);

struct AbxCellResult {
  std::string speaker_ax;
  std::string speaker_x;
  std::string prev_phone;
  std::string next_phone;
  std::string phone_a;
  std::string phone_b;
  double score = 0.0;  // mean triplet credit; cell error = 1 - score
  std::size_t n_triplets = 0;
};

struct AbxReport {
  AbxMode mode = AbxMode::kWithin;
  double error_rate = 0.0;
  std::size_t n_cells = 0;
  std::size_t n_skipped = 0;
  // Symmetrized error per unordered phone pair (first < second).
  std::map<std::pair<std::string, std::string>, double> per_phone_pair;
  std::vector<AbxCellResult> cells;
};

// Cell scores reduce to the report through a fixed hierarchy, each level a
// plain mean taken in sorted key order:
//   1. over speaker keys within each (context, ordered phone pair)
//   2. over contexts within each ordered phone pair
//   3. (p1,p2) averaged with (p2,p1)
//   4. over unordered phone pairs  ->  error_rate
AbxReport Aggregate(const std::vector<AbxCell> &cells,
                    const std::vector<double> &scores, AbxMode mode,
                    std::size_t n_skipped);

// Build cells, score them (in parallel when jobs > 1) and aggregate.
// Scores attach to cells by index, so the report is byte-identical for
// any worker count.
AbxReport RunAbx(const std::vector<AbxItem> &items, const FeatureMap &features,
                 AbxMode mode, FrameMetric metric, unsigned jobs = 1);

// TSV: "phone_a<TAB>phone_b<TAB>error" rows, then the one-line summary
// "<mode> <error_rate> <n_cells>".
std::string FormatAbxReportTsv(const AbxReport &report);

nlohmann::json AbxReportToJson(const AbxReport &report);

}  // namespace zrb

#endif  // ZRB_ABX_H_
