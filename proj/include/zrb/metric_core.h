// zrb/metric_core.h
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
// Numeric kernels shared by every metric: frame distances, DTW sequence
// distance, temporal pooling and rank correlation.

#ifndef ZRB_METRIC_CORE_H_
#define ZRB_METRIC_CORE_H_

#include <span>
#include <string>
#include <vector>

#include "zrb/types.h"

namespace zrb {

// Pooled (per-dimension aggregated) embedding of one token.
struct PooledEmbedding {
  std::string token_id;
  std::vector<double> vector;
  Pooling pooling = Pooling::kMean;
};

// Borrowed view over a contiguous block of frames (num_frames x dim).
// Does not own storage; the source FeatureSequence must stay alive.
struct FrameSpan {
  const double *data = nullptr;
  std::size_t num_frames = 0;
  std::size_t dim = 0;

  std::span<const double> frame(std::size_t t) const {
    return std::span<const double>(data + t * dim, dim);
  }
};

FrameSpan AsFrameSpan(const FeatureSequence &seq);

// Frame index range [floor(onset/shift + 0.5), floor(offset/shift + 0.5)),
// clamped into the sequence; an empty range falls back to the single
// nearest frame, so the result always has at least one frame.
FrameSpan Segment(const FeatureSequence &seq, double onset_s, double offset_s);

// u.v / (|u| |v|).  Throws on dimension mismatch or a zero-norm vector.
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

// angular:   arccos(clamp(cos(u,v), -1, 1)) / pi, in [0, 1]
// cosine:    1 - cos(u,v)
// euclidean: |u - v|
double FrameDistance(std::span<const double> u, std::span<const double> v,
                     FrameMetric metric);

// Mean frame distance along the best monotone alignment of x and y.
// Paths run from cell (0,0) to (|x|-1, |y|-1) with steps (1,0), (0,1) and
// (1,1); the path minimising  sum(cost) / cells_on_path  wins, which is
// found with a path-length-stratified DP (a plain min-total-cost DTW picks
// a different path whenever a longer alignment has a smaller mean).
// Backtracking ties resolve diagonal first, then (0,1), then (1,0).
double DtwDistance(FrameSpan x, FrameSpan y, FrameMetric metric);
double DtwDistance(const FeatureSequence &x, const FeatureSequence &y,
                   FrameMetric metric);

// Per-dimension aggregate over the time axis.
PooledEmbedding Pool(const FeatureSequence &seq, Pooling pooling);

// Spearman rank correlation: Pearson correlation of average-ranked data,
// tied values sharing the mean of their rank span.  Throws on length
// mismatch, fewer than two points, or constant input.
double Spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace zrb

#endif  // ZRB_METRIC_CORE_H_
