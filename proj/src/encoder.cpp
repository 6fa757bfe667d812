//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/encoder.hpp"

namespace moltok {

int atom_type_row(int element) {
  switch (element) {
    case 6: return 0;
    case 7: return 1;
    case 8: return 2;
    case 15: return 3;
    case 16: return 4;
    case 9: return 5;
    case 17: return 6;
    case 35: return 7;
    case 53: return 8;
    case 5: return 9;
    default: return 10;  // unknown-element bucket
  }
}

int charge_row(int formal_charge) {
  if (formal_charge <= -2) return 0;
  if (formal_charge == -1) return 1;
  if (formal_charge == 0) return 2;
  if (formal_charge == 1) return 3;
  return 4;
}

int edge_kind_row(const HierEdge& e) {
  if (e.kind == EdgeKind::Super) return 4;
  switch (e.order) {
    case BondOrder::Single: return 0;
    case BondOrder::Double: return 1;
    case BondOrder::Triple: return 2;
    case BondOrder::Aromatic: return 3;
  }
  return 0;
}

EncoderParams::EncoderParams() {
  for (int l = 0; l < kLayers; ++l) {
    edge[l] = Mat(kEdgeKindRows, kHidden);
    w1[l] = Mat(kHidden, kHidden);
    b1[l] = Mat(1, kHidden);
    w2[l] = Mat(kHidden, kHidden);
    b2[l] = Mat(1, kHidden);
    eps[l] = Mat(1, 1);
  }
}

EncoderBind bind_encoder(Tape& tape, const EncoderParams& p) {
  EncoderBind b;
  b.atom_type = tape.leaf(p.atom_type);
  b.charge = tape.leaf(p.charge);
  b.node_kind = tape.leaf(p.node_kind);
  for (int l = 0; l < kLayers; ++l) {
    b.edge[l] = tape.leaf(p.edge[l]);
    b.w1[l] = tape.leaf(p.w1[l]);
    b.b1[l] = tape.leaf(p.b1[l]);
    b.w2[l] = tape.leaf(p.w2[l]);
    b.b2[l] = tape.leaf(p.b2[l]);
    b.eps[l] = tape.leaf(p.eps[l]);
  }
  return b;
}

void accumulate_encoder_grads(const Tape& tape, const EncoderBind& bind,
                              EncoderParams& grads) {
  auto acc = [&](const Mat& src, Mat& dst) {
    for (std::size_t i = 0; i < src.d.size(); ++i) dst.d[i] += src.d[i];
  };
  acc(tape.grad(bind.atom_type), grads.atom_type);
  acc(tape.grad(bind.charge), grads.charge);
  acc(tape.grad(bind.node_kind), grads.node_kind);
  for (int l = 0; l < kLayers; ++l) {
    acc(tape.grad(bind.edge[l]), grads.edge[l]);
    acc(tape.grad(bind.w1[l]), grads.w1[l]);
    acc(tape.grad(bind.b1[l]), grads.b1[l]);
    acc(tape.grad(bind.w2[l]), grads.w2[l]);
    acc(tape.grad(bind.b2[l]), grads.b2[l]);
    acc(tape.grad(bind.eps[l]), grads.eps[l]);
  }
}

GraphTopo make_topo(const HierGraph& g) {
  GraphTopo topo;
  topo.n = g.num_nodes();
  topo.nbr.resize(topo.n);
  for (int u = 0; u < topo.n; ++u)
    for (std::size_t i = 0; i < g.adj[u].size(); ++i)
      topo.nbr[u].push_back(
          {g.adj[u][i], edge_kind_row(g.edges[g.adj_edges[u][i]])});
  return topo;
}

Tape::Var embed_features(Tape& tape, const HierGraph& g, const EncoderBind& b,
                         const std::set<int>& masked) {
  const int n = g.num_nodes();
  std::vector<int> at(n, -1), ch(n, -1), kind(n, -1);
  for (int u = 0; u < n; ++u) {
    switch (g.nodes[u].kind) {
      case NodeKind::Atom:
        if (masked.count(u)) {
          kind[u] = 3;
        } else {
          const Atom& a = g.base.atoms[g.nodes[u].ref];
          at[u] = atom_type_row(a.element);
          ch[u] = charge_row(a.formal_charge);
          kind[u] = 0;
        }
        break;
      case NodeKind::MotifSuper: kind[u] = 1; break;
      case NodeKind::GraphSuper: kind[u] = 2; break;
    }
  }
  return tape.embed_sum(b.atom_type, std::move(at), b.charge, std::move(ch),
                        b.node_kind, std::move(kind));
}

Tape::Var gin_forward(Tape& tape, const HierGraph& g, const EncoderBind& b,
                      const GraphTopo& topo, const std::set<int>& masked) {
  Tape::Var h = embed_features(tape, g, b, masked);
  for (int l = 0; l < kLayers; ++l) {
    Tape::Var agg = tape.gin_aggregate(h, b.eps[l], b.edge[l], topo);
    Tape::Var t = tape.linear(agg, b.w1[l], b.b1[l]);
    t = tape.relu(t);
    h = tape.linear(t, b.w2[l], b.b2[l]);
  }
  return h;
}

Tape::Var readout(Tape& tape, Tape::Var embeddings, std::vector<int> subset) {
  if (subset.empty()) throw InputError("readout over an empty node subset");
  Tape::Var rows = tape.select_rows(embeddings, std::move(subset));
  return tape.mean_rows(rows);
}

}  // namespace moltok
