//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_ENCODER_HPP
#define MOLTOK_ENCODER_HPP

#include <array>
#include <functional>
#include <set>
#include <string>

#include "moltok/autodiff.hpp"
#include "moltok/hier.hpp"

namespace moltok {

inline constexpr int kHidden = 300;
inline constexpr int kLayers = 5;
inline constexpr int kPeDim = 8;

// Feature vocabularies. Atom types cover the common organic elements with a
// trailing unknown bucket; charges are bucketed into five classes.
inline constexpr int kAtomTypeRows = 11;  // C N O P S F Cl Br I B + unknown
inline constexpr int kChargeRows = 5;     // <=-2, -1, 0, +1, >=+2
inline constexpr int kNodeKindRows = 4;   // atom, motif super, graph super, mask
inline constexpr int kEdgeKindRows = 5;   // single double triple aromatic super

int atom_type_row(int element);
int charge_row(int formal_charge);
int edge_kind_row(const HierEdge& e);

struct EncoderParams {
  Mat atom_type{kAtomTypeRows, kHidden};
  Mat charge{kChargeRows, kHidden};
  Mat node_kind{kNodeKindRows, kHidden};
  std::array<Mat, kLayers> edge;  // [kEdgeKindRows, kHidden] each
  std::array<Mat, kLayers> w1, b1, w2, b2;
  std::array<Mat, kLayers> eps;  // 1x1 each, init 0

  EncoderParams();
};

// Tape bindings for one forward/backward pass.
struct EncoderBind {
  Tape::Var atom_type, charge, node_kind;
  std::array<Tape::Var, kLayers> edge, w1, b1, w2, b2, eps;
};

EncoderBind bind_encoder(Tape& tape, const EncoderParams& p);

// Accumulates tape gradients of a bound encoder into `grads` (same shapes).
void accumulate_encoder_grads(const Tape& tape, const EncoderBind& bind,
                              EncoderParams& grads);

// Directed incidence lists with per-edge feature rows, consumed by the
// aggregation op.
GraphTopo make_topo(const HierGraph& g);

// Layer-0 features: atom nodes get atom-type + charge + node-kind rows,
// supernodes their node-kind row only, masked atoms only the mask row.
Tape::Var embed_features(Tape& tape, const HierGraph& g, const EncoderBind& b,
                         const std::set<int>& masked = {});

// Five rounds of (1+eps)-weighted sum aggregation with per-layer edge
// embeddings, each followed by a two-layer perceptron with an inner ReLU.
Tape::Var gin_forward(Tape& tape, const HierGraph& g, const EncoderBind& b,
                      const GraphTopo& topo, const std::set<int>& masked = {});

// Arithmetic mean of the selected rows; errors on an empty subset.
Tape::Var readout(Tape& tape, Tape::Var embeddings, std::vector<int> subset);

}  // namespace moltok

#endif  // MOLTOK_ENCODER_HPP
