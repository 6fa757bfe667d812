//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_HIER_HPP
#define MOLTOK_HIER_HPP

#include <vector>

#include "moltok/brics.hpp"
#include "moltok/chem.hpp"
#include "moltok/spectral.hpp"

namespace moltok {

enum class NodeKind : std::uint8_t { Atom = 0, MotifSuper, GraphSuper };
enum class EdgeKind : std::uint8_t { Chemical = 0, Super };

struct HierNode {
  NodeKind kind = NodeKind::Atom;
  int ref = 0;  // atom index for Atom, motif id otherwise
};

struct HierEdge {
  int a = 0;
  int b = 0;
  EdgeKind kind = EdgeKind::Chemical;
  BondOrder order = BondOrder::Single;  // meaningful for chemical edges
};

// The supernode-augmented graph: atom nodes 0..n-1 in molecule order, motif
// supernodes for ids 1..k, then the whole-graph supernode. Chemical edges
// first (bond order preserved), then the per-motif star edges, then the
// graph supernode's star over all atoms.
struct HierGraph {
  Molecule base;
  int num_motifs = 0;  // k (graph motif excluded)
  std::vector<HierNode> nodes;
  std::vector<HierEdge> edges;
  std::vector<std::vector<int>> adj;        // node -> neighbor nodes, ascending
  std::vector<std::vector<int>> adj_edges;  // parallel edge indices
  std::vector<std::vector<double>> pe;      // filled by laplacian_pe

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

// Augments the molecular graph per the node/edge union construction; motifs
// must come from fragment() (partition + graph motif last).
HierGraph build_hier(const Molecule& mol, const std::vector<Motif>& motifs);

// The molecule alone as a HierGraph (no supernodes); the node-centric
// pipeline runs on this.
HierGraph build_plain(const Molecule& mol);

// Fills hier.pe with the entries of the eigenvectors belonging to the `dim`
// smallest strictly positive eigenvalues of the symmetric normalized
// Laplacian of the (super)graph, zero-padded. Returns the eigenpairs.
LapPe laplacian_pe(HierGraph& hier, int dim = 8);

}  // namespace moltok

#endif  // MOLTOK_HIER_HPP
