// zrb/types.h
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

#ifndef ZRB_TYPES_H_
#define ZRB_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zrb {

// Failure while reading a text input; carries the offending file and
// 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, std::size_t line, const std::string &message)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
        path_(std::move(path)),
        line_(line) {}

  const std::string &path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

enum class FrameMetric { kAngular, kCosine, kEuclidean };
enum class Pooling { kMean, kMax, kMin };

const char *FrameMetricName(FrameMetric metric);
std::optional<FrameMetric> FrameMetricFromName(std::string_view name);
const char *PoolingName(Pooling pooling);
std::optional<Pooling> PoolingFromName(std::string_view name);

// One utterance worth of frame embeddings: frames() x dim, row-major, at a
// fixed frame rate of 1/frame_shift_s.
struct FeatureSequence {
  std::string utterance_id;
  double frame_shift_s = 0.01;
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t frames() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> frame(std::size_t t) const {
    return std::span<const double>(data).subspan(t * dim, dim);
  }
  // Throws std::invalid_argument on empty/ragged/non-finite content.
  void Validate() const;
};

// A triphone occurrence inside an utterance.
struct AbxItem {
  std::string utterance_id;
  double onset_s = 0.0;
  double offset_s = 0.0;
  std::string center_phone;
  std::string prev_phone;
  std::string next_phone;
  std::string speaker_id;
};

// A (positive, negative) utterance pair for paired judgment tasks.
struct StimulusPair {
  std::string pair_id;
  std::string positive_id;
  std::string negative_id;
  std::optional<std::string> group;
};

// One human similarity judgment between two spoken tokens, on a 0-10 scale.
struct SimilarityRecord {
  std::string token_a_id;
  std::string token_b_id;
  std::string word_a;
  std::string word_b;
  double human_score = 0.0;
  std::string dataset;
};

// Pseudo-probability (typically a log-probability) per utterance id.
using ScoreTable = std::map<std::string, double>;

// Shared run configuration for the command-line driver.
struct EvalConfig {
  double frame_shift_s = 0.01;
  FrameMetric metric = FrameMetric::kAngular;
  Pooling pooling = Pooling::kMean;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool normalize_lm = false;
};

}  // namespace zrb

#endif  // ZRB_TYPES_H_
