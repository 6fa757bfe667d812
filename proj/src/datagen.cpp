//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/datagen.hpp"

#include <algorithm>

#include "moltok/rng.hpp"

namespace moltok {

std::string motifhallu_question(const std::string& fg_name) {
  return "Is there a " + fg_name + " group in the molecule?";
}

std::vector<QAItem> gen_motifhallu(const Molecule& mol,
                                   const FunctionalGroupRegistry& registry,
                                   const std::string& id,
                                   const std::string& smiles,
                                   std::uint64_t seed, std::uint64_t ordinal) {
  const std::vector<int> counts = detect_group_counts(mol, registry);
  std::vector<QAItem> items;
  std::vector<int> undetected;
  for (int i = 0; i < registry.size(); ++i) {
    if (counts[i] > 0) {
      const std::string& name = registry.entries()[i].name;
      items.push_back({id, smiles, name, motifhallu_question(name), true});
    } else {
      undetected.push_back(i);
    }
  }
  Rng rng(seed ^ ordinal);
  const int k = std::min<int>(6, static_cast<int>(undetected.size()));
  for (int i : rng.sample_without_replacement(std::move(undetected), k)) {
    const std::string& name = registry.entries()[i].name;
    items.push_back({id, smiles, name, motifhallu_question(name), false});
  }
  return items;
}

CaptionRecord augment_caption(const Molecule& mol, const std::string& smiles,
                              const std::string& caption,
                              const FunctionalGroupRegistry& registry,
                              int k_neg, std::uint64_t seed,
                              std::uint64_t ordinal) {
  const auto detected = detect_functional_groups(mol, registry);

  std::string prefix;
  if (detected.empty()) {
    prefix = "This molecule has 0 functional groups.";
  } else {
    for (const auto& [name, count] : detected) {
      if (!prefix.empty()) prefix += ' ';
      prefix += "This molecule has " + std::to_string(count) + " " + name +
                (count == 1 ? " functional group." : " functional groups.");
    }
    // Absent-group sentence, distinct names in registry order feeding the
    // sampler.
    std::vector<std::string> pool;
    for (const FunctionalGroup& fg : registry.entries()) {
      bool hit = false;
      for (const auto& [name, count] : detected) hit |= name == fg.name;
      bool seen = std::find(pool.begin(), pool.end(), fg.name) != pool.end();
      if (!hit && !seen) pool.push_back(fg.name);
    }
    Rng rng(seed ^ ordinal);
    const int k = std::min<int>(k_neg, static_cast<int>(pool.size()));
    if (k > 0) {
      const auto picks = rng.sample_without_replacement(std::move(pool), k);
      std::string joined = picks[0];
      for (int i = 1; i < k; ++i)
        joined += (i + 1 == k ? " or " : ", or ") + picks[i];
      prefix += " This molecule has no " + joined + " groups.";
    }
  }

  CaptionRecord rec;
  rec.smiles = smiles;
  rec.caption = caption;
  rec.augmented = caption.empty() ? prefix : prefix + " " + caption;
  return rec;
}

}  // namespace moltok
