// zrb/unitlm.h
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
// N-gram language model over discrete units with interpolated absolute
// discounting.  For a history h with total count c(h), T(h) distinct
// continuations and discount d:
//
//   P(u|h) = max(c(h,u) - d, 0)/c(h) + (d T(h)/c(h)) P(u|h')
//
// where h' drops the oldest symbol.  The unigram level interpolates with
// the uniform distribution 1/(V+1) over units plus EOS; an unseen history
// backs off fully to P(u|h').  Sequences are padded with order-1 BOS
// symbols and terminated by one EOS, so probabilities over units + EOS
// sum to one for every observed history.

#ifndef ZRB_UNITLM_H_
#define ZRB_UNITLM_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "zrb/quantize.h"
#include "zrb/types.h"

namespace zrb {

class NGramModel {
 public:
  NGramModel() = default;
  NGramModel(std::size_t order, std::size_t vocab_size, double discount);

  std::size_t order() const { return order_; }
  std::size_t vocab_size() const { return vocab_size_; }
  double discount() const { return discount_; }

  // Reserved symbols live outside [0, vocab_size).
  std::uint32_t bos_id() const { return static_cast<std::uint32_t>(vocab_size_); }
  std::uint32_t eos_id() const { return static_cast<std::uint32_t>(vocab_size_) + 1; }

  // Accumulates counts for every history suffix length 0..order-1.
  void AddSequence(const UnitSequence &seq);

  // P(unit | history); history is oldest-first and may be shorter than
  // order-1 (it is used as the most recent symbols).  unit may be eos_id().
  double Prob(std::span<const std::uint32_t> history, std::uint32_t unit) const;

  // Sum over units and the final EOS of ln P(u_t | h_t), with BOS padding;
  // when normalize is set, divided by the number of scored positions.
  double SequenceLogProb(const UnitSequence &seq, bool normalize) const;

  // Versioned text format: a "zrb-ngram 1" magic line, a header line
  // "order V discount", then records "h1-h2-... unit count" (history "_"
  // when empty) sorted by (history, unit).  Bit-exact reproducible.
  void Write(const std::filesystem::path &path) const;
  static NGramModel Read(const std::filesystem::path &path);

  // Per-history counts, exposed for inspection and tests.
  struct HistoryEntry {
    std::uint64_t total = 0;
    std::map<std::uint32_t, std::uint64_t> next;
  };
  const std::map<std::vector<std::uint32_t>, HistoryEntry> &counts() const {
    return counts_;
  }

 private:
  double ProbSuffix(std::span<const std::uint32_t> history,
                    std::uint32_t unit) const;
  void CheckUnit(std::uint32_t unit) const;

  std::size_t order_ = 1;
  std::size_t vocab_size_ = 0;
  double discount_ = 0.75;
  std::map<std::vector<std::uint32_t>, HistoryEntry> counts_;
};

// Fits a model on the whole corpus.  Throws on an empty corpus, a discount
// outside (0,1), or a unit id >= vocab_size.
NGramModel FitNgram(const std::vector<UnitSequence> &corpus, std::size_t order,
                    double discount, std::size_t vocab_size);

// One pseudo-log-probability per utterance of a unit file, directly usable
// by PairedJudgmentAccuracy.  Throws on an empty unit file.
ScoreTable ScoreUnits(const NGramModel &model,
                      const std::vector<UnitSequence> &sequences,
                      bool normalize);
ScoreTable ScoreUnitFile(const NGramModel &model,
                         const std::filesystem::path &unit_file,
                         bool normalize);

}  // namespace zrb

#endif  // ZRB_UNITLM_H_
