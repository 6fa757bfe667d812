//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_STREAM_HPP
#define MOLTOK_STREAM_HPP

#include <string>
#include <string_view>
#include <vector>

#include "moltok/model.hpp"

namespace moltok {

struct Token {
  enum class Kind : std::uint8_t { Node = 0, Motif, Graph };
  Kind kind = Kind::Node;
  int source = 0;  // atom index or motif id
  std::vector<double> v;
};

struct TokenStream {
  std::string mol_id;
  std::vector<Token> tokens;

  bool operator==(const TokenStream&) const = default;
};

bool operator==(const Token& a, const Token& b);

// Node tokens only: encoder over the plain molecular graph, positional
// encodings of the plain graph appended, node adapter applied. Token order
// is ascending atom index.
TokenStream node_centric_stream(const Molecule& mol, const Model& model,
                                std::string mol_id);

// Hierarchical stream: encoder over the supernode-augmented graph; node
// tokens through the node adapter, motif supernodes through the motif
// adapter, the graph supernode through the graph adapter, in that order.
TokenStream hight_stream(const Molecule& mol, const Model& model,
                         std::string mol_id);

// JSON Lines, one token per line; floats carry 17 significant digits so the
// round trip is bitwise lossless.
std::string serialize(const TokenStream& stream);
TokenStream deserialize(std::string_view text);

// Shared float formatting (%.17g).
std::string format_double(double v);

}  // namespace moltok

#endif  // MOLTOK_STREAM_HPP
