//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_BRICS_HPP
#define MOLTOK_BRICS_HPP

#include <vector>

#include "moltok/chem.hpp"

namespace moltok {

struct Motif {
  int id = 0;                  // 1..k, k+1 for the whole-graph motif
  std::vector<int> atoms;      // ascending
  bool is_graph_motif = false;
};

// Bond indices (into mol.bonds) of every retrosynthetically cleavable bond:
// acyclic, order matching one of the 16 link rules, both endpoint
// environments matching the rule pair. Ring bonds are never returned.
std::vector<int> brics_cleavable_bonds(const Molecule& mol);

// Deletes every cleavable bond; connected components become motifs 1..k
// ordered by smallest contained atom index, followed by the whole-graph
// motif k+1. A molecule with nothing cleavable yields k = 1.
std::vector<Motif> fragment(const Molecule& mol);

}  // namespace moltok

#endif  // MOLTOK_BRICS_HPP
