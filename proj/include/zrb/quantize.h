// zrb/quantize.h
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
// k-means codebook learning over frame collections and discretization of
// feature sequences into unit sequences (pseudo-text).

#ifndef ZRB_QUANTIZE_H_
#define ZRB_QUANTIZE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "zrb/types.h"

namespace zrb {

struct Codebook {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;  // k x dim, row-major
  double inertia = 0.0;           // sum of squared distances at the end of the fit

  std::span<const double> centroid(std::size_t i) const {
    return std::span<const double>(centroids).subspan(i * dim, dim);
  }
};

struct KmeansTrace {
  std::vector<double> inertia_per_iter;  // measured at each assignment step
  std::size_t iterations = 0;            // completed assign+update rounds
  bool converged = false;
};

// Lloyd's algorithm with k-means++ seeding from the given seed.  Iterates
// until assignments stop changing or max_iters update rounds are done.
// Empty clusters reseed to the point farthest from its assigned centroid.
// Deterministic for a fixed (frame order, k, seed, max_iters), for any
// worker count.  frames is n x dim, row-major.
Codebook KmeansFit(std::span<const double> frames, std::size_t dim,
                   std::size_t k, std::size_t max_iters, std::uint64_t seed,
                   unsigned jobs = 1, KmeansTrace *trace = nullptr);

// Index of the nearest centroid by squared euclidean distance; ties break
// to the lowest index.
std::size_t Assign(std::span<const double> frame, const Codebook &codebook);

// The discrete pseudo-text induced by a codebook.
struct UnitSequence {
  std::string utterance_id;
  std::vector<std::uint32_t> units;
};

// Framewise assignment; with dedup, runs of identical adjacent units
// collapse to a single unit.
UnitSequence Discretize(const FeatureSequence &seq, const Codebook &codebook,
                        bool dedup);

// Re-expands units to one-hot vectors (dim = k) so the ABX pipeline can
// run on discretized representations.
FeatureSequence OneHotFeatures(const UnitSequence &units, std::size_t k,
                               double frame_shift_s);

// Codebook file: line 1 "k D", then k lines of D floats (shortest
// round-trip decimal form).  The inertia is not stored.
void WriteCodebook(const Codebook &codebook, const std::filesystem::path &path);
Codebook ReadCodebook(const std::filesystem::path &path);

// Unit file: one utterance per line, "utterance_id u1 u2 ... uT".
void WriteUnitFile(const std::vector<UnitSequence> &sequences,
                   const std::filesystem::path &path);
std::vector<UnitSequence> ReadUnitFile(const std::filesystem::path &path);

}  // namespace zrb

#endif  // ZRB_QUANTIZE_H_
