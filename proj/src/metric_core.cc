// src/metric_core.cc
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

#include "zrb/metric_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace zrb {

namespace {

double Dot(std::span<const double> u, std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t d = 0; d < u.size(); ++d) sum += u[d] * v[d];
  return sum;
}

void CheckSameDim(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("frame dimension mismatch: " +
                                std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()));
}

}  // namespace

FrameSpan AsFrameSpan(const FeatureSequence &seq) {
  return FrameSpan{seq.data.data(), seq.frames(), seq.dim};
}

FrameSpan Segment(const FeatureSequence &seq, double onset_s,
                  double offset_s) {
  const auto total = static_cast<long long>(seq.frames());
  if (total == 0)
    throw std::invalid_argument("segment of empty feature sequence '" +
                                seq.utterance_id + "'");
  auto begin =
      static_cast<long long>(std::floor(onset_s / seq.frame_shift_s + 0.5));
  auto end =
      static_cast<long long>(std::floor(offset_s / seq.frame_shift_s + 0.5));
  begin = std::clamp(begin, 0LL, total - 1);
  if (end < begin + 1) end = begin + 1;
  if (end > total) end = total;
  return FrameSpan{seq.data.data() + static_cast<std::size_t>(begin) * seq.dim,
                   static_cast<std::size_t>(end - begin), seq.dim};
}

double CosineSimilarity(std::span<const double> u, std::span<const double> v) {
  CheckSameDim(u, v);
  const double uu = Dot(u, u);
  const double vv = Dot(v, v);
  if (uu == 0.0 || vv == 0.0)
    throw std::domain_error("zero-norm vector in cosine similarity");
  // sqrt(uu * vv) keeps cos(u,u) == 1 exactly: sqrt(x*x) == x in IEEE
  // round-to-nearest.
  return Dot(u, v) / std::sqrt(uu * vv);
}

double FrameDistance(std::span<const double> u, std::span<const double> v,
                     FrameMetric metric) {
  switch (metric) {
    case FrameMetric::kAngular: {
      const double c = std::clamp(CosineSimilarity(u, v), -1.0, 1.0);
      return std::acos(c) / std::numbers::pi;
    }
    case FrameMetric::kCosine:
      return 1.0 - CosineSimilarity(u, v);
    case FrameMetric::kEuclidean: {
      CheckSameDim(u, v);
      double sum = 0.0;
      for (std::size_t d = 0; d < u.size(); ++d) {
        const double diff = u[d] - v[d];
        sum += diff * diff;
      }
      return std::sqrt(sum);
    }
  }
  throw std::logic_error("unknown frame metric");
}

double DtwDistance(FrameSpan x, FrameSpan y, FrameMetric metric) {
  if (x.num_frames == 0 || y.num_frames == 0)
    throw std::invalid_argument("DTW over an empty sequence");
  const std::size_t n = x.num_frames;
  const std::size_t m = y.num_frames;

  std::vector<double> cost(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      cost[i * m + j] = FrameDistance(x.frame(i), y.frame(j), metric);

  const double inf = std::numeric_limits<double>::infinity();
  // prev[i*m+j] = least total cost over paths reaching (i,j) with exactly
  // `len` cells; the answer is the best total/len over all lengths.
  std::vector<double> prev(n * m, inf);
  std::vector<double> cur(n * m, inf);
  prev[0] = cost[0];
  double best = (n == 1 && m == 1) ? cost[0] : inf;
  for (std::size_t len = 2; len <= n + m - 1; ++len) {
    std::fill(cur.begin(), cur.end(), inf);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = (i == 0) ? 1 : 0; j < m; ++j) {
        double reach = inf;
        if (i > 0 && j > 0) reach = prev[(i - 1) * m + (j - 1)];
        if (j > 0 && prev[i * m + (j - 1)] < reach)
          reach = prev[i * m + (j - 1)];
        if (i > 0 && prev[(i - 1) * m + j] < reach)
          reach = prev[(i - 1) * m + j];
        if (reach != inf) cur[i * m + j] = reach + cost[i * m + j];
      }
    }
    const double total = cur[n * m - 1];
    if (total != inf) {
      const double mean = total / static_cast<double>(len);
      if (mean < best) best = mean;
    }
    prev.swap(cur);
  }
  return best;
}

double DtwDistance(const FeatureSequence &x, const FeatureSequence &y,
                   FrameMetric metric) {
  return DtwDistance(AsFrameSpan(x), AsFrameSpan(y), metric);
}

PooledEmbedding Pool(const FeatureSequence &seq, Pooling pooling) {
  const std::size_t frames = seq.frames();
  if (frames == 0)
    throw std::invalid_argument("pooling over empty feature sequence '" +
                                seq.utterance_id + "'");
  std::vector<double> out(seq.frame(0).begin(), seq.frame(0).end());
  for (std::size_t t = 1; t < frames; ++t) {
    const auto row = seq.frame(t);
    for (std::size_t d = 0; d < seq.dim; ++d) {
      switch (pooling) {
        case Pooling::kMean:
          out[d] += row[d];
          break;
        case Pooling::kMax:
          out[d] = std::max(out[d], row[d]);
          break;
        case Pooling::kMin:
          out[d] = std::min(out[d], row[d]);
          break;
      }
    }
  }
  if (pooling == Pooling::kMean)
    for (double &v : out) v /= static_cast<double>(frames);
  return PooledEmbedding{seq.utterance_id, std::move(out), pooling};
}

namespace {

// 1-based ranks; exact-equal values share the mean of their rank span.
std::vector<double> AverageRanks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&xs](std::size_t a, std::size_t b) {
    if (xs[a] != xs[b]) return xs[a] < xs[b];
    return a < b;
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double Spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("correlation length mismatch: " +
                                std::to_string(xs.size()) + " vs " +
                                std::to_string(ys.size()));
  if (xs.size() < 2)
    throw std::invalid_argument("correlation needs at least two points");
  const auto constant = [](std::span<const double> v) {
    for (double x : v)
      if (x != v[0]) return false;
    return true;
  };
  if (constant(xs) || constant(ys))
    throw std::domain_error("correlation of constant input is undefined");

  const std::vector<double> rx = AverageRanks(xs);
  const std::vector<double> ry = AverageRanks(ys);
  const std::size_t n = rx.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace zrb
