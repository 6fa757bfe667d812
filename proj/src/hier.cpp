//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/hier.hpp"

#include <algorithm>

namespace moltok {

namespace {

void finish_adjacency(HierGraph& g) {
  g.adj.assign(g.nodes.size(), {});
  g.adj_edges.assign(g.nodes.size(), {});
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const HierEdge& e = g.edges[ei];
    g.adj[e.a].push_back(e.b);
    g.adj_edges[e.a].push_back(ei);
    g.adj[e.b].push_back(e.a);
    g.adj_edges[e.b].push_back(ei);
  }
  for (std::size_t u = 0; u < g.adj.size(); ++u) {
    std::vector<int> order(g.adj[u].size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return g.adj[u][x] < g.adj[u][y]; });
    std::vector<int> na(order.size()), ne(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      na[i] = g.adj[u][order[i]];
      ne[i] = g.adj_edges[u][order[i]];
    }
    g.adj[u] = std::move(na);
    g.adj_edges[u] = std::move(ne);
  }
}

}  // namespace

HierGraph build_hier(const Molecule& mol, const std::vector<Motif>& motifs) {
  HierGraph g;
  g.base = mol;
  const int n = mol.num_atoms();
  if (motifs.empty() || !motifs.back().is_graph_motif)
    throw InputError("motif list must end with the whole-graph motif");
  g.num_motifs = static_cast<int>(motifs.size()) - 1;

  for (int i = 0; i < n; ++i) g.nodes.push_back({NodeKind::Atom, i});
  for (int m = 0; m < g.num_motifs; ++m)
    g.nodes.push_back({NodeKind::MotifSuper, motifs[m].id});
  g.nodes.push_back({NodeKind::GraphSuper, motifs.back().id});

  for (const Bond& b : mol.bonds)
    g.edges.push_back({b.a, b.b, EdgeKind::Chemical, b.order});
  for (int m = 0; m < g.num_motifs; ++m) {
    const int super = n + m;
    for (int a : motifs[m].atoms) {
      if (a < 0 || a >= n)
        throw InputError("motif atom index out of range");
      g.edges.push_back({a, super, EdgeKind::Super, BondOrder::Single});
    }
  }
  const int graph_super = n + g.num_motifs;
  for (int a = 0; a < n; ++a)
    g.edges.push_back({a, graph_super, EdgeKind::Super, BondOrder::Single});

  finish_adjacency(g);
  return g;
}

HierGraph build_plain(const Molecule& mol) {
  HierGraph g;
  g.base = mol;
  g.num_motifs = 0;
  for (int i = 0; i < mol.num_atoms(); ++i)
    g.nodes.push_back({NodeKind::Atom, i});
  for (const Bond& b : mol.bonds)
    g.edges.push_back({b.a, b.b, EdgeKind::Chemical, b.order});
  finish_adjacency(g);
  return g;
}

LapPe laplacian_pe(HierGraph& hier, int dim) {
  LapPe pe = laplacian_pe_from_adjacency(hier.adj, dim);
  hier.pe = pe_rows(pe, hier.num_nodes(), dim);
  return pe;
}

}  // namespace moltok
