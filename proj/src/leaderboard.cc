// src/leaderboard.cc
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

#include "zrb/leaderboard.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace zrb {

namespace {

bool LooksLikeBaseline(const std::string &system) {
  std::string lower;
  lower.reserve(system.size());
  for (char c : system)
    lower.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower.find("baseline") != std::string::npos ||
         lower.rfind("top", 0) == 0;
}

std::string TwoDecimals(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string BudgetText(const std::optional<double> &budget) {
  if (!budget) return "-";
  const double value = *budget;
  if (value == std::floor(value) && std::abs(value) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", value);
    return buf;
  }
  return TwoDecimals(value);
}

struct Column {
  const char *title;
  std::optional<double> LeaderboardRow::*field;
  bool lower_is_better;
};

constexpr Column kColumns[] = {
    {"ABX-with. clean", &LeaderboardRow::abx_within_clean, true},
    {"ABX-with. other", &LeaderboardRow::abx_within_other, true},
    {"ABX-across clean", &LeaderboardRow::abx_across_clean, true},
    {"ABX-across other", &LeaderboardRow::abx_across_other, true},
    {"sWUGGY", &LeaderboardRow::swuggy, false},
    {"sBLIMP", &LeaderboardRow::sblimp, false},
    {"sSIMI synth.", &LeaderboardRow::ssimi_synth, false},
    {"sSIMI Libri.", &LeaderboardRow::ssimi_libri, false},
};

void ValidateRow(const LeaderboardRow &row) {
  const auto check01 = [&](const std::optional<double> &v, const char *name) {
    if (v && (*v < 0.0 || *v > 1.0))
      throw std::invalid_argument("leaderboard row '" + row.system + "': " +
                                  name + " outside [0,1]");
  };
  check01(row.abx_within_clean, "ABX error");
  check01(row.abx_within_other, "ABX error");
  check01(row.abx_across_clean, "ABX error");
  check01(row.abx_across_other, "ABX error");
  check01(row.swuggy, "accuracy");
  check01(row.sblimp, "accuracy");
  const auto check100 = [&](const std::optional<double> &v) {
    if (v && std::abs(*v) > 100.0)
      throw std::invalid_argument("leaderboard row '" + row.system +
                                  "': |ssimi| > 100");
  };
  check100(row.ssimi_synth);
  check100(row.ssimi_libri);
  if (row.set != "dev" && row.set != "test")
    throw std::invalid_argument("leaderboard row '" + row.system +
                                "': set must be dev or test");
}

}  // namespace

std::vector<LeaderboardRow> RowsFromReports(
    const std::vector<nlohmann::json> &reports) {
  std::map<std::pair<std::string, std::string>, LeaderboardRow> rows;
  for (const auto &report : reports) {
    const std::string system = report.value("system", "system");
    const std::string set = report.value("set", "dev");
    auto &row = rows[{system, set}];
    row.system = system;
    row.set = set;
    if (report.contains("budget")) row.budget = report["budget"].get<double>();
    if (report.contains("baseline"))
      row.baseline = report["baseline"].get<bool>();
    else if (LooksLikeBaseline(system))
      row.baseline = true;

    const std::string task = report.value("task", "");
    if (task == "phonetic") {
      const std::string mode = report.value("mode", "within");
      const std::string subset = report.value("subset", "clean");
      const double error = report.at("error_rate").get<double>();
      if (mode == "within" && subset == "clean")
        row.abx_within_clean = error;
      else if (mode == "within" && subset == "other")
        row.abx_within_other = error;
      else if (mode == "across" && subset == "clean")
        row.abx_across_clean = error;
      else if (mode == "across" && subset == "other")
        row.abx_across_other = error;
      else
        throw std::invalid_argument("unknown ABX mode/subset '" + mode + "/" +
                                    subset + "'");
    } else if (task == "lexical") {
      row.swuggy = report.at("accuracy").get<double>();
    } else if (task == "syntactic") {
      row.sblimp = report.at("accuracy").get<double>();
    } else if (task == "semantic") {
      const std::string subset = report.value("subset", "synthetic");
      const double rho = report.at("overall_rho_x100").get<double>();
      if (subset == "synthetic")
        row.ssimi_synth = rho;
      else if (subset == "librispeech")
        row.ssimi_libri = rho;
      else
        throw std::invalid_argument("unknown semantic subset '" + subset +
                                    "'");
    } else {
      throw std::invalid_argument("report without a recognised 'task' tag");
    }
  }
  std::vector<LeaderboardRow> out;
  out.reserve(rows.size());
  for (auto &[key, row] : rows) out.push_back(std::move(row));
  return out;
}

std::string RenderLeaderboard(std::vector<LeaderboardRow> rows) {
  if (rows.empty())
    throw std::invalid_argument("no leaderboard rows to render");
  for (const auto &row : rows) ValidateRow(row);
  std::sort(rows.begin(), rows.end(),
            [](const LeaderboardRow &a, const LeaderboardRow &b) {
              return std::tie(a.system, a.set) < std::tie(b.system, b.set);
            });

  // Best value per column among non-baseline rows; ties all get bold.
  std::optional<double> best[std::size(kColumns)];
  for (std::size_t c = 0; c < std::size(kColumns); ++c) {
    for (const auto &row : rows) {
      if (row.baseline) continue;
      const auto &value = row.*(kColumns[c].field);
      if (!value) continue;
      if (!best[c] || (kColumns[c].lower_is_better ? *value < *best[c]
                                                   : *value > *best[c]))
        best[c] = *value;
    }
  }

  std::string out = "| System | Budget | Set |";
  for (const auto &col : kColumns) {
    out += " ";
    out += col.title;
    out += " |";
  }
  out += "\n|---|---|---|";
  for (std::size_t c = 0; c < std::size(kColumns); ++c) out += "---|";
  out += "\n";
  for (const auto &row : rows) {
    out += "| " + row.system + " | " + BudgetText(row.budget) + " | " +
           row.set + " |";
    for (std::size_t c = 0; c < std::size(kColumns); ++c) {
      const auto &value = row.*(kColumns[c].field);
      out += " ";
      if (!value) {
        out += "-";
      } else {
        const bool bold = !row.baseline && best[c] && *value == *best[c];
        if (bold) out += "**";
        out += TwoDecimals(*value);
        if (bold) out += "**";
      }
      out += " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace zrb
