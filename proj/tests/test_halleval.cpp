//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <algorithm>
#include <random>

#include "moltok/halleval.hpp"

using namespace moltok;

namespace {

std::vector<GoldItem> gold4() {
  return {{"a", true}, {"b", true}, {"c", false}, {"d", false}};
}

}  // namespace

TEST_CASE("perfect predictions score 100 across the board") {
  std::vector<Prediction> pred;
  for (const GoldItem& g : gold4()) pred.push_back({g.id, g.yes, {}});
  const MetricsReport r = score(pred, gold4());
  CHECK(r.f1_pos == 100.0);
  CHECK(r.f1_neg == 100.0);
  CHECK(r.macro_f1 == 100.0);
  CHECK(r.micro_f1 == 100.0);
  CHECK(r.accuracy == 100.0);
  CHECK(r.yes_ratio == 50.0);
  CHECK_FALSE(r.auroc.has_value());
}

TEST_CASE("the all-yes baseline signature") {
  std::vector<Prediction> pred;
  for (const GoldItem& g : gold4()) pred.push_back({g.id, true, {}});
  const MetricsReport r = score(pred, gold4());
  CHECK(r.yes_ratio == 100.0);
  CHECK(r.f1_neg == 0.0);
  CHECK(r.accuracy == 50.0);  // the positive fraction
}

TEST_CASE("hand-computed confusion example") {
  // gold (P,P,N,N), predictions (Y,N,Y,N).
  std::vector<Prediction> pred{
      {"a", true, {}}, {"b", false, {}}, {"c", true, {}}, {"d", false, {}}};
  const MetricsReport r = score(pred, gold4());
  CHECK(r.tp == 1);
  CHECK(r.fp == 1);
  CHECK(r.tn == 1);
  CHECK(r.fn == 1);
  CHECK(r.f1_pos == 50.0);
  CHECK(r.f1_neg == 50.0);
  CHECK(r.accuracy == 50.0);
}

TEST_CASE("swapping the label convention swaps the class F1 scores") {
  std::mt19937_64 rng(55);
  std::vector<GoldItem> gold;
  std::vector<Prediction> pred, pred_swapped;
  std::vector<GoldItem> gold_swapped;
  for (int i = 0; i < 200; ++i) {
    const std::string id = "q" + std::to_string(i);
    const bool gy = (rng() % 3) != 0;
    const bool py = (rng() % 2) != 0;
    gold.push_back({id, gy});
    gold_swapped.push_back({id, !gy});
    pred.push_back({id, py, {}});
    pred_swapped.push_back({id, !py, {}});
  }
  const MetricsReport a = score(pred, gold);
  const MetricsReport b = score(pred_swapped, gold_swapped);
  CHECK(a.f1_pos == b.f1_neg);
  CHECK(a.f1_neg == b.f1_pos);
  CHECK(a.macro_f1 == b.macro_f1);
  CHECK(a.accuracy == b.accuracy);
}

TEST_CASE("metrics ignore prediction order") {
  std::vector<Prediction> pred{
      {"a", true, 0.9}, {"b", false, 0.2}, {"c", true, 0.7}, {"d", false, 0.1}};
  const MetricsReport r1 = score(pred, gold4());
  std::reverse(pred.begin(), pred.end());
  const MetricsReport r2 = score(pred, gold4());
  CHECK(r1.f1_pos == r2.f1_pos);
  CHECK(r1.auroc == r2.auroc);
  CHECK(r1.yes_ratio == r2.yes_ratio);
}

TEST_CASE("rank-based AUROC") {
  // Gold labels as scores: perfect separation.
  std::vector<Prediction> perfect{
      {"a", true, 1.0}, {"b", true, 1.0}, {"c", false, 0.0}, {"d", false, 0.0}};
  CHECK(score(perfect, gold4()).auroc == 100.0);
  // Constant score: the tie rule lands exactly on 50.
  std::vector<Prediction> constant{
      {"a", true, 0.5}, {"b", true, 0.5}, {"c", false, 0.5}, {"d", false, 0.5}};
  CHECK(score(constant, gold4()).auroc == 50.0);
  // A score missing anywhere drops the metric.
  std::vector<Prediction> partial{
      {"a", true, 0.5}, {"b", true, 0.5}, {"c", false, 0.5}, {"d", false, {}}};
  CHECK_FALSE(score(partial, gold4()).auroc.has_value());
  // AUROC stays within [0, 100] on random scored sets.
  std::mt19937_64 rng(77);
  std::vector<GoldItem> gold;
  std::vector<Prediction> pred;
  for (int i = 0; i < 100; ++i) {
    const std::string id = "r" + std::to_string(i);
    gold.push_back({id, (rng() % 2) != 0});
    pred.push_back({id, true, static_cast<double>(rng() % 10)});
  }
  const auto r = score(pred, gold);
  REQUIRE(r.auroc.has_value());
  CHECK(*r.auroc >= 0.0);
  CHECK(*r.auroc <= 100.0);
}

TEST_CASE("input-contract violations are rejected") {
  std::vector<Prediction> dup{{"a", true, {}}, {"a", false, {}},
                              {"b", true, {}}, {"c", true, {}},
                              {"d", true, {}}};
  CHECK_THROWS_AS(score(dup, gold4()), InputError);
  std::vector<Prediction> missing{{"a", true, {}}};
  CHECK_THROWS_AS(score(missing, gold4()), InputError);
  std::vector<Prediction> stray{{"a", true, {}}, {"b", true, {}},
                                {"c", true, {}}, {"d", true, {}},
                                {"zz", true, {}}};
  CHECK_THROWS_AS(score(stray, gold4()), InputError);
}

TEST_CASE("empty-class conventions") {
  // No predicted positives, no actual positives: F1 pos defined as 100.
  std::vector<GoldItem> all_neg{{"a", false}, {"b", false}};
  std::vector<Prediction> none{{"a", false, {}}, {"b", false, {}}};
  const auto r1 = score(none, all_neg);
  CHECK(r1.f1_pos == 100.0);
  CHECK(r1.f1_neg == 100.0);
  // No predicted positives but actual positives exist: 0.
  std::vector<GoldItem> some_pos{{"a", true}, {"b", false}};
  std::vector<Prediction> never{{"a", false, {}}, {"b", false, {}}};
  CHECK(score(never, some_pos).f1_pos == 0.0);
}
