// tests/testgen.h
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
// Deterministic synthetic fixtures: random ABX item sets with features,
// and a 3-state patterned corpus for the end-to-end pipeline checks.

#ifndef ZRB_TESTS_TESTGEN_H_
#define ZRB_TESTS_TESTGEN_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "zrb/abx.h"
#include "zrb/types.h"

namespace zrb_test {

inline zrb::FeatureSequence MakeFeatures(std::mt19937_64 &rng,
                                         const std::string &id,
                                         std::size_t frames, std::size_t dim,
                                         double frame_shift = 0.01) {
  std::normal_distribution<double> normal(0.0, 1.0);
  zrb::FeatureSequence seq;
  seq.utterance_id = id;
  seq.frame_shift_s = frame_shift;
  seq.dim = dim;
  seq.data.resize(frames * dim);
  for (double &v : seq.data) v = normal(rng);
  return seq;
}

struct AbxFixture {
  std::vector<zrb::AbxItem> items;
  zrb::FeatureMap features;
};

// Random item set: 3 speakers, up to 4 contexts, up to 3 phones, token
// counts drawn per (speaker, context, phone), capped at max_items.  The
// first (speaker, context) block is forced dense so both modes always
// yield at least one cell.  Every item owns its own utterance of random
// 8-D frames.
inline AbxFixture MakeRandomAbxFixture(std::uint64_t seed,
                                       std::size_t max_items = 40) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> context_count(1, 4);
  std::uniform_int_distribution<int> token_count(0, 2);
  std::uniform_int_distribution<int> frame_count(3, 8);

  const std::vector<std::string> speakers = {"s01", "s02", "s03"};
  const std::vector<std::pair<std::string, std::string>> all_contexts = {
      {"b", "t"}, {"k", "n"}, {"d", "m"}, {"g", "l"}};
  const std::vector<std::string> phones = {"aa", "ih", "uw"};

  const int n_contexts = context_count(rng);
  AbxFixture fx;
  std::size_t counter = 0;
  const auto add_item = [&](const std::string &speaker,
                            const std::pair<std::string, std::string> &ctx,
                            const std::string &phone) {
    if (fx.items.size() >= max_items) return;
    const std::string utt = "u" + std::to_string(counter++);
    const std::size_t frames = static_cast<std::size_t>(frame_count(rng));
    fx.features.emplace(utt, MakeFeatures(rng, utt, frames, 8));
    zrb::AbxItem item;
    item.utterance_id = utt;
    item.onset_s = 0.0;
    item.offset_s = static_cast<double>(frames) * 0.01;
    item.center_phone = phone;
    item.prev_phone = ctx.first;
    item.next_phone = ctx.second;
    item.speaker_id = speaker;
    fx.items.push_back(std::move(item));
  };

  // Guaranteed cells: two speakers with 2 x "aa" and 1 x "ih" in context 0.
  for (const auto &speaker : {speakers[0], speakers[1]}) {
    add_item(speaker, all_contexts[0], phones[0]);
    add_item(speaker, all_contexts[0], phones[0]);
    add_item(speaker, all_contexts[0], phones[1]);
  }
  for (int c = 0; c < n_contexts; ++c)
    for (const auto &speaker : speakers)
      for (const auto &phone : phones) {
        const int n = token_count(rng);
        for (int t = 0; t < n; ++t) add_item(speaker, all_contexts[c], phone);
      }
  return fx;
}

// ---------------------------------------------------------------------------
// 3-state patterned generator.  States are well-separated Gaussian bumps;
// legal utterances walk the cycle 0 -> 1 -> 2 -> 0.

struct PatternGenerator {
  std::mt19937_64 rng;
  double noise = 0.3;
  std::size_t dim = 8;

  explicit PatternGenerator(std::uint64_t seed) : rng(seed) {}

  std::vector<double> StateCenter(int state) const {
    std::vector<double> center(dim, 0.0);
    center[static_cast<std::size_t>(state)] = 4.0;
    return center;
  }

  // segment_frames frames per state, noise added per coordinate
  zrb::FeatureSequence Render(const std::string &id,
                              const std::vector<int> &states) {
    std::normal_distribution<double> jitter(0.0, noise);
    std::uniform_int_distribution<int> seg_len(3, 5);
    zrb::FeatureSequence seq;
    seq.utterance_id = id;
    seq.dim = dim;
    for (const int state : states) {
      const auto center = StateCenter(state);
      const int frames = seg_len(rng);
      for (int f = 0; f < frames; ++f)
        for (std::size_t d = 0; d < dim; ++d)
          seq.data.push_back(center[d] + jitter(rng));
    }
    return seq;
  }

  std::vector<int> LegalStates(std::size_t segments) {
    std::uniform_int_distribution<int> start(0, 2);
    std::vector<int> states;
    int s = start(rng);
    for (std::size_t i = 0; i < segments; ++i) {
      states.push_back(s);
      s = (s + 1) % 3;
    }
    return states;
  }

  // A reordering of `states` with no adjacent repeats and at least two
  // broken transitions, so it no longer follows the cycle.
  std::vector<int> ShuffledStates(const std::vector<int> &states) {
    std::vector<int> shuffled = states;
    const auto broken = [](const std::vector<int> &v) {
      std::size_t count = 0;
      for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != (v[i - 1] + 1) % 3) ++count;
      return count;
    };
    const auto adjacent_repeat = [](const std::vector<int> &v) {
      for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return true;
      return false;
    };
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      if (!adjacent_repeat(shuffled) && broken(shuffled) >= 2) return shuffled;
    }
    // last resort: reverse the cycle, which breaks every transition
    std::vector<int> reversed(states.rbegin(), states.rend());
    return reversed;
  }
};

}  // namespace zrb_test

#endif  // ZRB_TESTS_TESTGEN_H_
