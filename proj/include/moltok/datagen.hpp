//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_DATAGEN_HPP
#define MOLTOK_DATAGEN_HPP

#include <string>
#include <vector>

#include "moltok/smarts.hpp"

namespace moltok {

struct QAItem {
  std::string id;
  std::string smiles;
  std::string fg_name;
  std::string question;
  bool yes = false;
};

struct CaptionRecord {
  std::string smiles;
  std::string caption;
  std::string augmented;
};

// Question text for a functional group.
std::string motifhallu_question(const std::string& fg_name);

// Yes/No items for one molecule: one positive per detected registry entry,
// then min(6, 38 - detected) negatives drawn without replacement from the
// undetected entries. The generator is seeded with seed ^ ordinal so output
// is independent of scheduling.
std::vector<QAItem> gen_motifhallu(const Molecule& mol,
                                   const FunctionalGroupRegistry& registry,
                                   const std::string& id,
                                   const std::string& smiles,
                                   std::uint64_t seed, std::uint64_t ordinal);

// Functional-group sentences prepended to the caption: one positive sentence
// per detected group name (registry order, merged counts), or the zero-group
// sentence when nothing is detected; detected molecules additionally get one
// joined negative sentence naming k_neg absent groups.
CaptionRecord augment_caption(const Molecule& mol, const std::string& smiles,
                              const std::string& caption,
                              const FunctionalGroupRegistry& registry,
                              int k_neg, std::uint64_t seed,
                              std::uint64_t ordinal);

}  // namespace moltok

#endif  // MOLTOK_DATAGEN_HPP
