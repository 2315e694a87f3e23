// tests/test_metric_core.cc
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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "testgen.h"

using zrb::FeatureSequence;
using zrb::FrameMetric;
using zrb::Pooling;

namespace {

FeatureSequence Seq1D(const std::vector<double> &values) {
  FeatureSequence seq;
  seq.utterance_id = "seq";
  seq.dim = 1;
  seq.data = values;
  return seq;
}

FeatureSequence SeqRows(const std::vector<std::vector<double>> &rows) {
  FeatureSequence seq;
  seq.utterance_id = "seq";
  seq.dim = rows[0].size();
  for (const auto &row : rows)
    seq.data.insert(seq.data.end(), row.begin(), row.end());
  return seq;
}

}  // namespace

TEST_CASE("frame distance basics") {
  const std::vector<double> ex = {1.0, 0.0};
  const std::vector<double> ey = {0.0, 1.0};
  const std::vector<double> mex = {-1.0, 0.0};

  CHECK(zrb::FrameDistance(ex, ex, FrameMetric::kAngular) == 0.0);
  CHECK(zrb::FrameDistance(ex, ey, FrameMetric::kAngular) == 0.5);
  CHECK(zrb::FrameDistance(ex, mex, FrameMetric::kAngular) == 1.0);
  CHECK(zrb::FrameDistance(ex, ey, FrameMetric::kCosine) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zrb::FrameDistance(ex, ey, FrameMetric::kEuclidean) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const std::vector<double> three = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(zrb::FrameDistance(ex, three, FrameMetric::kEuclidean),
                  std::invalid_argument);
  const std::vector<double> zero = {0.0, 0.0};
  CHECK_THROWS_AS(zrb::FrameDistance(ex, zero, FrameMetric::kAngular),
                  std::domain_error);
  CHECK_THROWS_AS(zrb::FrameDistance(ex, zero, FrameMetric::kCosine),
                  std::domain_error);
  // euclidean accepts zero vectors
  CHECK(zrb::FrameDistance(zero, zero, FrameMetric::kEuclidean) == 0.0);
}

TEST_CASE("frame distance properties on random vectors") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> u(5), v(5);
    for (auto &x : u) x = normal(rng);
    for (auto &x : v) x = normal(rng);
    for (const auto metric : {FrameMetric::kAngular, FrameMetric::kCosine,
                              FrameMetric::kEuclidean}) {
      const double duv = zrb::FrameDistance(u, v, metric);
      const double dvu = zrb::FrameDistance(v, u, metric);
      CHECK(duv == dvu);  // bitwise symmetric
      CHECK(duv >= 0.0);
      CHECK(zrb::FrameDistance(u, u, metric) == 0.0);
    }
    const double angular = zrb::FrameDistance(u, v, FrameMetric::kAngular);
    CHECK(angular <= 1.0);
    // positive scaling leaves the angular distance essentially unchanged
    std::vector<double> u3 = u, v7 = v;
    for (auto &x : u3) x *= 3.0;  // power of two would be exact; use 3
    for (auto &x : v7) x *= 7.0;
    CHECK(zrb::FrameDistance(u3, v7, FrameMetric::kAngular) ==
          doctest::Approx(angular).epsilon(1e-12));
  }
}

TEST_CASE("dtw distance of a sequence with itself is zero") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto seq = zrb_test::MakeFeatures(rng, "u", 1 + trial % 6, 4);
    CHECK(zrb::DtwDistance(seq, seq, FrameMetric::kAngular) == 0.0);
    CHECK(zrb::DtwDistance(seq, seq, FrameMetric::kEuclidean) == 0.0);
  }
}

TEST_CASE("dtw single-column example") {
  const auto x = Seq1D({0.0, 1.0});
  const auto y = Seq1D({0.0});
  CHECK(zrb::DtwDistance(x, y, FrameMetric::kEuclidean) == 0.5);
}

TEST_CASE("dtw picks the best path mean, not the best total") {
  // cost matrix [[0,4],[2,2],[4,0]]: the best mean path takes 3 cells
  const auto x = Seq1D({0.0, 2.0, 4.0});
  const auto y = Seq1D({0.0, 4.0});
  const double d = zrb::DtwDistance(x, y, FrameMetric::kEuclidean);
  CHECK(d == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto oracle = zrb_test::DtwBruteForce(
      zrb::AsFrameSpan(x), zrb::AsFrameSpan(y), FrameMetric::kEuclidean);
  CHECK(d == oracle.mean);

  // a case where min-total and min-mean disagree
  const auto a = Seq1D({0.0, 1.0});
  const auto b = Seq1D({0.9, 0.1});
  const double dm = zrb::DtwDistance(a, b, FrameMetric::kEuclidean);
  CHECK(dm == doctest::Approx((0.9 + 0.1 + 0.9) / 3.0).epsilon(1e-15));
}

TEST_CASE("dtw equals the brute-force path oracle") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> frames(1, 6);
  std::uniform_int_distribution<int> dims(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(dims(rng));
    const auto x = zrb_test::MakeFeatures(rng, "x", frames(rng), dim);
    const auto y = zrb_test::MakeFeatures(rng, "y", frames(rng), dim);
    const auto metric =
        trial % 2 == 0 ? FrameMetric::kEuclidean : FrameMetric::kAngular;
    const double d = zrb::DtwDistance(x, y, metric);
    const auto oracle = zrb_test::DtwBruteForce(zrb::AsFrameSpan(x),
                                                zrb::AsFrameSpan(y), metric);
    CHECK(d == oracle.mean);
  }
}

TEST_CASE("dtw is symmetric on continuous inputs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> frames(1, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = zrb_test::MakeFeatures(rng, "x", frames(rng), 3);
    const auto y = zrb_test::MakeFeatures(rng, "y", frames(rng), 3);
    CHECK(zrb::DtwDistance(x, y, FrameMetric::kEuclidean) ==
          zrb::DtwDistance(y, x, FrameMetric::kEuclidean));
    CHECK(zrb::DtwDistance(x, y, FrameMetric::kAngular) ==
          zrb::DtwDistance(y, x, FrameMetric::kAngular));
  }
}

TEST_CASE("segment extraction rounds to nearest frame starts") {
  auto seq = Seq1D({0.0, 1.0, 2.0, 3.0, 4.0});  // 5 frames at 10 ms
  const auto whole = zrb::Segment(seq, 0.0, 0.05);
  CHECK(whole.num_frames == 5);
  CHECK(whole.frame(0)[0] == 0.0);

  const auto mid = zrb::Segment(seq, 0.014, 0.036);  // frames [1, 4)
  CHECK(mid.num_frames == 3);
  CHECK(mid.frame(0)[0] == 1.0);
  CHECK(mid.frame(2)[0] == 3.0);

  // empty rounded range falls back to one frame
  const auto point = zrb::Segment(seq, 0.020, 0.022);
  CHECK(point.num_frames == 1);
  CHECK(point.frame(0)[0] == 2.0);

  // clamped at the end of the sequence
  const auto tail = zrb::Segment(seq, 0.048, 0.12);
  CHECK(tail.num_frames == 1);
  CHECK(tail.frame(0)[0] == 4.0);
}

TEST_CASE("pooling aggregates per dimension") {
  const auto seq = SeqRows({{0.0, 2.0}, {2.0, 4.0}});
  const auto mean = zrb::Pool(seq, Pooling::kMean);
  CHECK(mean.vector == std::vector<double>{1.0, 3.0});
  const auto max = zrb::Pool(seq, Pooling::kMax);
  CHECK(max.vector == std::vector<double>{2.0, 4.0});
  const auto single = SeqRows({{5.0, 6.0}});
  CHECK(zrb::Pool(single, Pooling::kMin).vector ==
        std::vector<double>{5.0, 6.0});
  CHECK(mean.pooling == Pooling::kMean);
  CHECK(mean.token_id == "seq");
}

TEST_CASE("mean pooling commutes with affine maps") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto seq = zrb_test::MakeFeatures(rng, "u", 6, 4);
    auto mapped = seq;
    for (double &v : mapped.data) v = 2.5 * v - 1.25;
    const auto pooled = zrb::Pool(seq, Pooling::kMean);
    const auto pooled_mapped = zrb::Pool(mapped, Pooling::kMean);
    for (std::size_t d = 0; d < 4; ++d)
      CHECK(pooled_mapped.vector[d] ==
            doctest::Approx(2.5 * pooled.vector[d] - 1.25).epsilon(1e-12));
  }
}

TEST_CASE("spearman endpoints and hand oracle") {
  const std::vector<double> xs = {1.0, 2.0, 3.0};
  CHECK(zrb::Spearman(xs, std::vector<double>{10.0, 20.0, 30.0}) == 1.0);
  CHECK(zrb::Spearman(xs, std::vector<double>{30.0, 20.0, 10.0}) == -1.0);

  const std::vector<double> tx = {1.0, 2.0, 2.0, 4.0};
  const std::vector<double> ty = {1.0, 3.0, 2.0, 4.0};
  // average ranks (1, 2.5, 2.5, 4) vs (1, 3, 2, 4) -> sqrt(0.9)
  CHECK(zrb::Spearman(tx, ty) ==
        doctest::Approx(std::sqrt(0.9)).epsilon(1e-12));
  CHECK(zrb::Spearman(tx, ty) ==
        doctest::Approx(zrb_test::HandSpearman(tx, ty)).epsilon(1e-15));
}

TEST_CASE("spearman is invariant under strictly increasing transforms") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(12), ys(12);
    for (auto &v : xs) v = normal(rng);
    for (auto &v : ys) v = normal(rng);
    const double base = zrb::Spearman(xs, ys);
    auto tx = xs;
    for (auto &v : tx) v = std::exp(0.5 * v) + 3.0;  // strictly increasing
    CHECK(zrb::Spearman(tx, ys) == base);  // ranks identical, bitwise equal
  }
}

TEST_CASE("spearman rejects degenerate input") {
  const std::vector<double> xs = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(zrb::Spearman(xs, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(zrb::Spearman(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(zrb::Spearman(xs, std::vector<double>{5.0, 5.0, 5.0}),
                  std::domain_error);
}
