//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_HALLEVAL_HPP
#define MOLTOK_HALLEVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "moltok/chem.hpp"

namespace moltok {

struct GoldItem {
  std::string id;
  bool yes = false;
};

struct Prediction {
  std::string id;
  bool yes = false;
  std::optional<double> score;  // higher = more "Yes"
};

// All values are percentages. Yes is the positive label of the pooled
// confusion counts; micro F1 coincides with f1_pos for this single binary
// task and is reported separately for table fidelity.
struct MetricsReport {
  double f1_pos = 0.0;
  double f1_neg = 0.0;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  double accuracy = 0.0;
  double yes_ratio = 0.0;
  std::optional<double> auroc;  // only when every prediction carries a score
  long tp = 0, fp = 0, tn = 0, fn = 0;
};

// Throws InputError on missing ids, duplicate ids, or stray predictions.
MetricsReport score(const std::vector<Prediction>& predictions,
                    const std::vector<GoldItem>& gold);

}  // namespace moltok

#endif  // MOLTOK_HALLEVAL_HPP
