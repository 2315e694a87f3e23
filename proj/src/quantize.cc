// src/quantize.cc
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

#include "zrb/quantize.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "zrb/text_util.h"
#include "zrb/parallel.h"

namespace zrb {

namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return sum;
}

// Uniform [0,1) drawn portably from the raw generator output.
double NextUnit(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::span<const double> FrameAt(std::span<const double> frames,
                                std::size_t dim, std::size_t i) {
  return frames.subspan(i * dim, dim);
}

// k-means++: first centroid uniform, then proportional to the squared
// distance to the nearest chosen centroid.  When all remaining mass is
// zero (duplicate points), the lowest unchosen index is taken.
std::vector<double> SeedCentroids(std::span<const double> frames,
                                  std::size_t dim, std::size_t k,
                                  std::uint64_t seed) {
  const std::size_t n = frames.size() / dim;
  std::mt19937_64 rng(seed);
  std::vector<double> centroids;
  centroids.reserve(k * dim);
  std::unordered_set<std::size_t> chosen;

  const auto push = [&](std::size_t index) {
    const auto f = FrameAt(frames, dim, index);
    centroids.insert(centroids.end(), f.begin(), f.end());
    chosen.insert(index);
  };

  push(std::min<std::size_t>(static_cast<std::size_t>(NextUnit(rng) *
                                                      static_cast<double>(n)),
                             n - 1));
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i)
    d2[i] = SquaredDistance(FrameAt(frames, dim, i),
                            std::span<const double>(centroids).first(dim));

  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = NextUnit(rng) * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += d2[i];
        if (cum > r) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // numeric tail: last nonzero weight
        for (std::size_t i = n; i-- > 0;)
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
      }
    }
    if (pick == n) {
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen.count(i)) {
          pick = i;
          break;
        }
    }
    push(pick);
    const auto latest = std::span<const double>(centroids).subspan(c * dim, dim);
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], SquaredDistance(FrameAt(frames, dim, i), latest));
  }
  return centroids;
}

std::size_t NearestCentroid(std::span<const double> frame,
                            std::span<const double> centroids,
                            std::size_t dim, std::size_t k, double *dist2) {
  std::size_t best = 0;
  double best_d2 = SquaredDistance(frame, centroids.subspan(0, dim));
  for (std::size_t c = 1; c < k; ++c) {
    const double d2 = SquaredDistance(frame, centroids.subspan(c * dim, dim));
    if (d2 < best_d2) {  // ties keep the lowest index
      best_d2 = d2;
      best = c;
    }
  }
  if (dist2 != nullptr) *dist2 = best_d2;
  return best;
}

}  // namespace

Codebook KmeansFit(std::span<const double> frames, std::size_t dim,
                   std::size_t k, std::size_t max_iters, std::uint64_t seed,
                   unsigned jobs, KmeansTrace *trace) {
  if (dim == 0) throw std::invalid_argument("k-means: dimension is zero");
  if (k == 0) throw std::invalid_argument("k-means: k must be >= 1");
  if (max_iters == 0) throw std::invalid_argument("k-means: max_iters must be >= 1");
  if (frames.size() % dim != 0)
    throw std::invalid_argument("k-means: frame buffer is not n x dim");
  const std::size_t n = frames.size() / dim;
  if (n < k)
    throw std::invalid_argument("k-means: fewer frames (" + std::to_string(n) +
                                ") than clusters (" + std::to_string(k) + ")");
  for (double v : frames)
    if (!std::isfinite(v))
      throw std::invalid_argument("k-means: non-finite input value");

  Codebook book;
  book.k = k;
  book.dim = dim;
  book.centroids = SeedCentroids(frames, dim, k, seed);

  std::vector<std::uint32_t> assignments;
  std::vector<std::uint32_t> next(n);
  std::vector<double> d2(n);
  KmeansTrace local_trace;
  KmeansTrace &tr = trace != nullptr ? *trace : local_trace;

  std::size_t rounds = 0;
  while (true) {
    ParallelChunks(n, jobs, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        next[i] = static_cast<std::uint32_t>(NearestCentroid(
            FrameAt(frames, dim, i), book.centroids, dim, k, &d2[i]));
    });
    double inertia = 0.0;  // reduced in frame order, independent of jobs
    for (double v : d2) inertia += v;
    tr.inertia_per_iter.push_back(inertia);
    book.inertia = inertia;

    if (!assignments.empty() && next == assignments) {
      tr.converged = true;
      break;
    }
    assignments = next;
    if (rounds == max_iters) break;
    ++rounds;

    // Update step: per-cluster means accumulated in frame order.
    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto f = FrameAt(frames, dim, i);
      double *dst = sums.data() + assignments[i] * dim;
      for (std::size_t d = 0; d < dim; ++d) dst[d] += f[d];
      ++count[assignments[i]];
    }
    std::vector<bool> claimed(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) {
        for (std::size_t d = 0; d < dim; ++d)
          book.centroids[c * dim + d] =
              sums[c * dim + d] / static_cast<double>(count[c]);
      } else {
        // Reseed an empty cluster to the point farthest from its
        // assigned centroid (as of the last assignment step).
        std::size_t far = n;
        double far_d2 = -1.0;
        for (std::size_t i = 0; i < n; ++i)
          if (!claimed[i] && d2[i] > far_d2) {
            far_d2 = d2[i];
            far = i;
          }
        const auto f = FrameAt(frames, dim, far);
        std::copy(f.begin(), f.end(), book.centroids.begin() + c * dim);
        claimed[far] = true;
        assignments[far] = static_cast<std::uint32_t>(c);
        d2[far] = 0.0;
      }
    }
  }
  tr.iterations = rounds;
  return book;
}

std::size_t Assign(std::span<const double> frame, const Codebook &codebook) {
  if (frame.size() != codebook.dim)
    throw std::invalid_argument(
        "assign: frame dimension " + std::to_string(frame.size()) +
        " does not match codebook dimension " + std::to_string(codebook.dim));
  return NearestCentroid(frame, codebook.centroids, codebook.dim, codebook.k,
                         nullptr);
}

UnitSequence Discretize(const FeatureSequence &seq, const Codebook &codebook,
                        bool dedup) {
  if (seq.dim != codebook.dim)
    throw std::invalid_argument(
        "discretize: feature dimension " + std::to_string(seq.dim) +
        " does not match codebook dimension " + std::to_string(codebook.dim));
  UnitSequence out;
  out.utterance_id = seq.utterance_id;
  const std::size_t frames = seq.frames();
  out.units.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto unit = static_cast<std::uint32_t>(Assign(seq.frame(t), codebook));
    if (dedup && !out.units.empty() && out.units.back() == unit) continue;
    out.units.push_back(unit);
  }
  return out;
}

FeatureSequence OneHotFeatures(const UnitSequence &units, std::size_t k,
                               double frame_shift_s) {
  if (units.units.empty())
    throw std::invalid_argument("one-hot expansion of empty unit sequence");
  FeatureSequence seq;
  seq.utterance_id = units.utterance_id;
  seq.frame_shift_s = frame_shift_s;
  seq.dim = k;
  seq.data.assign(units.units.size() * k, 0.0);
  for (std::size_t t = 0; t < units.units.size(); ++t) {
    if (units.units[t] >= k)
      throw std::invalid_argument("unit id " + std::to_string(units.units[t]) +
                                  " out of range for k=" + std::to_string(k));
    seq.data[t * k + units.units[t]] = 1.0;
  }
  return seq;
}

void WriteCodebook(const Codebook &codebook,
                   const std::filesystem::path &path) {
  std::string out = std::to_string(codebook.k);
  out.push_back(' ');
  out += std::to_string(codebook.dim);
  out.push_back('\n');
  for (std::size_t c = 0; c < codebook.k; ++c) {
    for (std::size_t d = 0; d < codebook.dim; ++d) {
      if (d > 0) out.push_back(' ');
      out += FormatDouble(codebook.centroids[c * codebook.dim + d]);
    }
    out.push_back('\n');
  }
  WriteWholeFile(path, out);
}

Codebook ReadCodebook(const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  if (lines.empty())
    throw ParseError(path.string(), 1, "empty codebook file");
  const auto header = SplitFields(lines[0], ' ');
  const auto k = header.size() == 2 ? ParseUnsigned(header[0]) : std::nullopt;
  const auto dim = header.size() == 2 ? ParseUnsigned(header[1]) : std::nullopt;
  if (!k || !dim || *k == 0 || *dim == 0)
    throw ParseError(path.string(), 1, "expected codebook header 'k D'");
  if (lines.size() != *k + 1)
    throw ParseError(path.string(), lines.size(),
                     "expected " + std::to_string(*k) + " centroid rows");
  Codebook book;
  book.k = *k;
  book.dim = *dim;
  book.centroids.reserve(*k * *dim);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = SplitFields(lines[li], ' ');
    if (fields.size() != *dim)
      throw ParseError(path.string(), li + 1,
                       "expected " + std::to_string(*dim) + " values, got " +
                           std::to_string(fields.size()));
    for (const auto field : fields) {
      const auto value = ParseDouble(field);
      if (!value || !std::isfinite(*value))
        throw ParseError(path.string(), li + 1,
                         "bad centroid value '" + std::string(field) + "'");
      book.centroids.push_back(*value);
    }
  }
  return book;
}

void WriteUnitFile(const std::vector<UnitSequence> &sequences,
                   const std::filesystem::path &path) {
  std::string out;
  for (const auto &seq : sequences) {
    if (seq.units.empty())
      throw std::invalid_argument("unit sequence '" + seq.utterance_id +
                                  "' is empty");
    out += seq.utterance_id;
    for (const auto unit : seq.units) {
      out.push_back(' ');
      out += std::to_string(unit);
    }
    out.push_back('\n');
  }
  WriteWholeFile(path, out);
}

std::vector<UnitSequence> ReadUnitFile(const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  std::vector<UnitSequence> sequences;
  std::unordered_set<std::string> seen;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto fields = SplitFields(lines[li], ' ');
    if (fields.size() < 2 || fields[0].empty())
      throw ParseError(path.string(), li + 1,
                       "expected 'utterance_id u1 u2 ...'");
    UnitSequence seq;
    seq.utterance_id = std::string(fields[0]);
    if (!seen.insert(seq.utterance_id).second)
      throw ParseError(path.string(), li + 1,
                       "duplicate utterance id '" + seq.utterance_id + "'");
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto unit = ParseUnsigned(fields[f]);
      if (!unit || *unit > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(path.string(), li + 1,
                         "bad unit id '" + std::string(fields[f]) + "'");
      seq.units.push_back(static_cast<std::uint32_t>(*unit));
    }
    sequences.push_back(std::move(seq));
  }
  return sequences;
}

}  // namespace zrb
