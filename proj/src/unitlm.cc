// src/unitlm.cc
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

#include "zrb/unitlm.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zrb/text_util.h"

namespace zrb {

NGramModel::NGramModel(std::size_t order, std::size_t vocab_size,
                       double discount)
    : order_(order), vocab_size_(vocab_size), discount_(discount) {
  if (order_ < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (vocab_size_ < 1)
    throw std::invalid_argument("n-gram vocabulary must be >= 1");
  if (!(discount_ > 0.0 && discount_ < 1.0))
    throw std::invalid_argument("discount must lie in (0,1), got " +
                                FormatDouble(discount_));
}

void NGramModel::CheckUnit(std::uint32_t unit) const {
  if (unit >= vocab_size_)
    throw std::out_of_range("unit id " + std::to_string(unit) +
                            " >= vocabulary size " +
                            std::to_string(vocab_size_));
}

void NGramModel::AddSequence(const UnitSequence &seq) {
  if (seq.units.empty())
    throw std::invalid_argument("unit sequence '" + seq.utterance_id +
                                "' is empty");
  for (const auto unit : seq.units) CheckUnit(unit);

  std::vector<std::uint32_t> padded;
  padded.reserve(order_ - 1 + seq.units.size() + 1);
  padded.assign(order_ - 1, bos_id());
  padded.insert(padded.end(), seq.units.begin(), seq.units.end());
  padded.push_back(eos_id());

  // Each predicted position feeds every history suffix length 0..order-1.
  for (std::size_t pos = order_ - 1; pos < padded.size(); ++pos) {
    const std::uint32_t unit = padded[pos];
    for (std::size_t len = 0; len < order_; ++len) {
      std::vector<std::uint32_t> history(padded.begin() + (pos - len),
                                         padded.begin() + pos);
      auto &entry = counts_[std::move(history)];
      entry.total += 1;
      entry.next[unit] += 1;
    }
  }
}

double NGramModel::ProbSuffix(std::span<const std::uint32_t> history,
                              std::uint32_t unit) const {
  if (history.empty()) {
    const double base = 1.0 / static_cast<double>(vocab_size_ + 1);
    const auto it = counts_.find(std::vector<std::uint32_t>{});
    if (it == counts_.end() || it->second.total == 0) return base;
    const auto &entry = it->second;
    const auto cit = entry.next.find(unit);
    const double c = cit == entry.next.end()
                         ? 0.0
                         : static_cast<double>(cit->second);
    const double total = static_cast<double>(entry.total);
    const double types = static_cast<double>(entry.next.size());
    return std::max(c - discount_, 0.0) / total +
           discount_ * types / total * base;
  }
  const auto it = counts_.find(
      std::vector<std::uint32_t>(history.begin(), history.end()));
  if (it == counts_.end())  // unseen history: full backoff
    return ProbSuffix(history.subspan(1), unit);
  const auto &entry = it->second;
  const auto cit = entry.next.find(unit);
  const double c =
      cit == entry.next.end() ? 0.0 : static_cast<double>(cit->second);
  const double total = static_cast<double>(entry.total);
  const double types = static_cast<double>(entry.next.size());
  return std::max(c - discount_, 0.0) / total +
         discount_ * types / total * ProbSuffix(history.subspan(1), unit);
}

double NGramModel::Prob(std::span<const std::uint32_t> history,
                        std::uint32_t unit) const {
  if (unit != eos_id()) CheckUnit(unit);
  const std::size_t max_len = order_ - 1;
  if (history.size() > max_len)
    history = history.subspan(history.size() - max_len);
  return ProbSuffix(history, unit);
}

double NGramModel::SequenceLogProb(const UnitSequence &seq,
                                   bool normalize) const {
  if (seq.units.empty())
    throw std::invalid_argument("unit sequence '" + seq.utterance_id +
                                "' is empty");
  std::vector<std::uint32_t> window(order_ - 1, bos_id());
  const auto shift = [&](std::uint32_t unit) {
    if (window.empty()) return;
    window.erase(window.begin());
    window.push_back(unit);
  };
  double logprob = 0.0;
  for (const auto unit : seq.units) {
    logprob += std::log(Prob(window, unit));
    shift(unit);
  }
  logprob += std::log(Prob(window, eos_id()));
  if (normalize)
    logprob /= static_cast<double>(seq.units.size() + 1);
  return logprob;
}

namespace {

std::string HistoryToken(const std::vector<std::uint32_t> &history) {
  if (history.empty()) return "_";
  std::string out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i > 0) out.push_back('-');
    out += std::to_string(history[i]);
  }
  return out;
}

}  // namespace

void NGramModel::Write(const std::filesystem::path &path) const {
  std::string out = "zrb-ngram 1\n";
  out += std::to_string(order_);
  out.push_back(' ');
  out += std::to_string(vocab_size_);
  out.push_back(' ');
  out += FormatDouble(discount_);
  out.push_back('\n');
  // counts_ is keyed by history vector, so records come out sorted.
  for (const auto &[history, entry] : counts_) {
    const std::string hist = HistoryToken(history);
    for (const auto &[unit, count] : entry.next) {
      out += hist;
      out.push_back(' ');
      out += std::to_string(unit);
      out.push_back(' ');
      out += std::to_string(count);
      out.push_back('\n');
    }
  }
  WriteWholeFile(path, out);
}

NGramModel NGramModel::Read(const std::filesystem::path &path) {
  const std::string content = ReadWholeFile(path);
  const auto lines = SplitLines(content);
  if (lines.size() < 2 || lines[0] != "zrb-ngram 1")
    throw ParseError(path.string(), 1, "expected magic line 'zrb-ngram 1'");
  const auto header = SplitFields(lines[1], ' ');
  if (header.size() != 3)
    throw ParseError(path.string(), 2, "expected header 'order V discount'");
  const auto order = ParseUnsigned(header[0]);
  const auto vocab = ParseUnsigned(header[1]);
  const auto discount = ParseDouble(header[2]);
  if (!order || !vocab || !discount)
    throw ParseError(path.string(), 2, "expected header 'order V discount'");

  NGramModel model(*order, *vocab, *discount);
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const auto fields = SplitFields(lines[li], ' ');
    if (fields.size() != 3)
      throw ParseError(path.string(), li + 1,
                       "expected record 'history unit count'");
    std::vector<std::uint32_t> history;
    if (fields[0] != "_") {
      for (const auto token : SplitFields(fields[0], '-')) {
        const auto symbol = ParseUnsigned(token);
        if (!symbol || *symbol > model.eos_id())
          throw ParseError(path.string(), li + 1,
                           "bad history symbol '" + std::string(token) + "'");
        history.push_back(static_cast<std::uint32_t>(*symbol));
      }
    }
    if (history.size() > model.order_ - 1)
      throw ParseError(path.string(), li + 1, "history longer than order-1");
    const auto unit = ParseUnsigned(fields[1]);
    const auto count = ParseUnsigned(fields[2]);
    if (!unit || *unit > model.eos_id() || *unit == model.bos_id())
      throw ParseError(path.string(), li + 1,
                       "bad unit id '" + std::string(fields[1]) + "'");
    if (!count || *count == 0)
      throw ParseError(path.string(), li + 1,
                       "bad count '" + std::string(fields[2]) + "'");
    auto &entry = model.counts_[history];
    entry.total += *count;
    auto [pos, inserted] =
        entry.next.emplace(static_cast<std::uint32_t>(*unit), *count);
    if (!inserted)
      throw ParseError(path.string(), li + 1, "duplicate count record");
  }
  return model;
}

NGramModel FitNgram(const std::vector<UnitSequence> &corpus, std::size_t order,
                    double discount, std::size_t vocab_size) {
  if (corpus.empty())
    throw std::invalid_argument("n-gram training corpus is empty");
  NGramModel model(order, vocab_size, discount);
  for (const auto &seq : corpus) model.AddSequence(seq);
  return model;
}

ScoreTable ScoreUnits(const NGramModel &model,
                      const std::vector<UnitSequence> &sequences,
                      bool normalize) {
  if (sequences.empty())
    throw std::invalid_argument("no unit sequences to score");
  ScoreTable table;
  for (const auto &seq : sequences) {
    if (!table.emplace(seq.utterance_id,
                       model.SequenceLogProb(seq, normalize))
             .second)
      throw std::runtime_error("duplicate utterance id '" + seq.utterance_id +
                               "' in scored units");
  }
  return table;
}

ScoreTable ScoreUnitFile(const NGramModel &model,
                         const std::filesystem::path &unit_file,
                         bool normalize) {
  const auto sequences = ReadUnitFile(unit_file);
  if (sequences.empty())
    throw std::runtime_error("empty unit file: " + unit_file.string());
  return ScoreUnits(model, sequences, normalize);
}

}  // namespace zrb
