// src/types.cc
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

#include "zrb/types.h"

#include <cmath>

namespace zrb {

const char *FrameMetricName(FrameMetric metric) {
  switch (metric) {
    case FrameMetric::kAngular:
      return "angular";
    case FrameMetric::kCosine:
      return "cosine";
    case FrameMetric::kEuclidean:
      return "euclidean";
  }
  return "angular";
}

std::optional<FrameMetric> FrameMetricFromName(std::string_view name) {
  if (name == "angular") return FrameMetric::kAngular;
  if (name == "cosine") return FrameMetric::kCosine;
  if (name == "euclidean") return FrameMetric::kEuclidean;
  return std::nullopt;
}

const char *PoolingName(Pooling pooling) {
  switch (pooling) {
    case Pooling::kMean:
      return "mean";
    case Pooling::kMax:
      return "max";
    case Pooling::kMin:
      return "min";
  }
  return "mean";
}

std::optional<Pooling> PoolingFromName(std::string_view name) {
  if (name == "mean") return Pooling::kMean;
  if (name == "max") return Pooling::kMax;
  if (name == "min") return Pooling::kMin;
  return std::nullopt;
}

void FeatureSequence::Validate() const {
  if (dim == 0)
    throw std::invalid_argument("feature sequence '" + utterance_id +
                                "': dimension is zero");
  if (data.empty() || data.size() % dim != 0)
    throw std::invalid_argument("feature sequence '" + utterance_id +
                                "': storage is not a T x " +
                                std::to_string(dim) + " matrix");
  if (!(frame_shift_s > 0.0))
    throw std::invalid_argument("feature sequence '" + utterance_id +
                                "': frame shift must be positive");
  for (double v : data)
    if (!std::isfinite(v))
      throw std::invalid_argument("feature sequence '" + utterance_id +
                                  "': non-finite value");
}

}  // namespace zrb
