//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/halleval.hpp"

#include <algorithm>
#include <map>

namespace moltok {

namespace {

// 2 tp / (2 tp + fp + fn), with the empty-positive convention: no actual and
// no predicted positives scores 100.
double f1_percent(long tp, long fp, long fn) {
  const long denom = 2 * tp + fp + fn;
  if (denom == 0) return 100.0;
  return 100.0 * 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

MetricsReport score(const std::vector<Prediction>& predictions,
                    const std::vector<GoldItem>& gold) {
  if (gold.empty()) throw InputError("empty gold set");
  std::map<std::string, const Prediction*> by_id;
  for (const Prediction& p : predictions) {
    if (!by_id.emplace(p.id, &p).second)
      throw InputError("duplicate prediction id '" + p.id + "'");
  }
  std::map<std::string, bool> gold_ids;
  for (const GoldItem& g : gold)
    if (!gold_ids.emplace(g.id, g.yes).second)
      throw InputError("duplicate gold id '" + g.id + "'");
  for (const Prediction& p : predictions)
    if (!gold_ids.count(p.id))
      throw InputError("prediction id '" + p.id + "' not in the gold set");

  MetricsReport r;
  bool all_scored = true;
  std::vector<std::pair<double, bool>> scored;  // (score, is_positive)
  for (const GoldItem& g : gold) {
    auto it = by_id.find(g.id);
    if (it == by_id.end())
      throw InputError("missing prediction for id '" + g.id + "'");
    const Prediction& p = *it->second;
    if (g.yes && p.yes) ++r.tp;
    if (!g.yes && p.yes) ++r.fp;
    if (!g.yes && !p.yes) ++r.tn;
    if (g.yes && !p.yes) ++r.fn;
    if (p.score.has_value())
      scored.push_back({*p.score, g.yes});
    else
      all_scored = false;
  }

  const double total = static_cast<double>(gold.size());
  r.f1_pos = f1_percent(r.tp, r.fp, r.fn);
  r.f1_neg = f1_percent(r.tn, r.fn, r.fp);
  r.macro_f1 = 0.5 * (r.f1_pos + r.f1_neg);
  r.micro_f1 = r.f1_pos;
  r.accuracy = 100.0 * static_cast<double>(r.tp + r.tn) / total;
  r.yes_ratio = 100.0 * static_cast<double>(r.tp + r.fp) / total;

  const long pos = r.tp + r.fn;
  const long neg = r.fp + r.tn;
  if (all_scored && pos > 0 && neg > 0) {
    // Rank statistic with average ranks on ties.
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < scored.size()) {
      std::size_t j = i;
      while (j < scored.size() && scored[j].first == scored[i].first) ++j;
      const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
      for (std::size_t k = i; k < j; ++k)
        if (scored[k].second) rank_sum_pos += avg_rank;
      i = j;
    }
    const double auc =
        (rank_sum_pos - 0.5 * static_cast<double>(pos) * (pos + 1)) /
        (static_cast<double>(pos) * static_cast<double>(neg));
    r.auroc = 100.0 * auc;
  }
  return r;
}

}  // namespace moltok
