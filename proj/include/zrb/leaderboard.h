// zrb/leaderboard.h
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

#ifndef ZRB_LEADERBOARD_H_
#define ZRB_LEADERBOARD_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace zrb {

// One leaderboard line; any metric may be absent.  ABX values are error
// rates in [0,1], swuggy/sblimp accuracies in [0,1], ssimi values are
// rho x 100 in [-100,100].
struct LeaderboardRow {
  std::string system;
  std::optional<double> budget;  // GPU-hours, recorded metadata
  std::string set = "dev";       // "dev" or "test"
  std::optional<double> abx_within_clean;
  std::optional<double> abx_within_other;
  std::optional<double> abx_across_clean;
  std::optional<double> abx_across_other;
  std::optional<double> swuggy;
  std::optional<double> sblimp;
  std::optional<double> ssimi_synth;
  std::optional<double> ssimi_libri;
  // Baseline/topline rows never receive bolding and do not compete for it.
  bool baseline = false;
};

// Merges per-metric report JSON objects into rows keyed by (system, set).
// Reports carry "system", "set", optional "budget"/"baseline", a "task"
// tag and the metric payload written by the eval commands.
std::vector<LeaderboardRow> RowsFromReports(
    const std::vector<nlohmann::json> &reports);

// One markdown table, rows sorted by (system, set), numbers rendered to
// two decimals.  Per column the best value among non-baseline rows is
// bold: minimum for the ABX error columns, maximum elsewhere.  Throws on
// empty input or out-of-range values.
std::string RenderLeaderboard(std::vector<LeaderboardRow> rows);

}  // namespace zrb

#endif  // ZRB_LEADERBOARD_H_
