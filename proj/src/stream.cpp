//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/stream.hpp"

#include <cstdio>

#include <json.hpp>

#include "moltok/brics.hpp"
#include "moltok/io.hpp"

namespace moltok {

bool operator==(const Token& a, const Token& b) {
  return a.kind == b.kind && a.source == b.source && a.v == b.v;
}

namespace {

const char* kind_name(Token::Kind k) {
  switch (k) {
    case Token::Kind::Node: return "node";
    case Token::Kind::Motif: return "motif";
    case Token::Kind::Graph: return "graph";
  }
  return "node";
}

Token::Kind kind_from(const std::string& s, int lineno) {
  if (s == "node") return Token::Kind::Node;
  if (s == "motif") return Token::Kind::Motif;
  if (s == "graph") return Token::Kind::Graph;
  throw InputError("line " + std::to_string(lineno) + ": unknown token kind '" +
                   s + "'");
}

// Apply one adapter to the row `u` of embeddings concatenated with its PE.
std::vector<double> adapt(const Mat& h, const std::vector<double>& pe, int u,
                          const Linear& adapter) {
  const int d_in = kHidden + kPeDim;
  if (adapter.w.rows != d_in)
    throw InputError("adapter input width mismatch: expected " +
                     std::to_string(d_in) + ", have " +
                     std::to_string(adapter.w.rows));
  const int d_out = adapter.w.cols;
  std::vector<double> x(d_in);
  for (int j = 0; j < kHidden; ++j) x[j] = h.at(u, j);
  for (int j = 0; j < kPeDim; ++j) x[kHidden + j] = pe[j];
  std::vector<double> out(d_out);
  for (int j = 0; j < d_out; ++j) out[j] = adapter.b.at(0, j);
  for (int k = 0; k < d_in; ++k) {
    const double xk = x[k];
    if (xk == 0.0) continue;
    for (int j = 0; j < d_out; ++j) out[j] += xk * adapter.w.at(k, j);
  }
  return out;
}

Mat run_encoder(const HierGraph& g, const Model& model) {
  GraphTopo topo = make_topo(g);
  Tape tape;
  EncoderBind bind = bind_encoder(tape, model.enc);
  return tape.value(gin_forward(tape, g, bind, topo));
}

}  // namespace

TokenStream node_centric_stream(const Molecule& mol, const Model& model,
                                std::string mol_id) {
  HierGraph g = build_plain(mol);
  laplacian_pe(g, kPeDim);
  const Mat h = run_encoder(g, model);

  TokenStream out;
  out.mol_id = std::move(mol_id);
  for (int u = 0; u < mol.num_atoms(); ++u)
    out.tokens.push_back(
        {Token::Kind::Node, u, adapt(h, g.pe[u], u, model.adapter_n)});
  return out;
}

TokenStream hight_stream(const Molecule& mol, const Model& model,
                         std::string mol_id) {
  const auto motifs = fragment(mol);
  HierGraph g = build_hier(mol, motifs);
  laplacian_pe(g, kPeDim);
  const Mat h = run_encoder(g, model);

  TokenStream out;
  out.mol_id = std::move(mol_id);
  const int n = mol.num_atoms();
  for (int u = 0; u < n; ++u)
    out.tokens.push_back(
        {Token::Kind::Node, u, adapt(h, g.pe[u], u, model.adapter_n)});
  for (int m = 0; m < g.num_motifs; ++m) {
    const int node = n + m;
    out.tokens.push_back({Token::Kind::Motif, g.nodes[node].ref,
                          adapt(h, g.pe[node], node, model.adapter_m)});
  }
  const int graph_node = n + g.num_motifs;
  out.tokens.push_back({Token::Kind::Graph, g.nodes[graph_node].ref,
                        adapt(h, g.pe[graph_node], graph_node, model.adapter_g)});
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize(const TokenStream& stream) {
  std::string out;
  for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
    const Token& t = stream.tokens[i];
    out += "{\"mol\": \"" + json_escape(stream.mol_id) + "\", \"i\": " +
           std::to_string(i) + ", \"kind\": \"" + kind_name(t.kind) +
           "\", \"src\": " + std::to_string(t.source) + ", \"v\": [";
    for (std::size_t j = 0; j < t.v.size(); ++j) {
      if (j) out += ", ";
      out += format_double(t.v[j]);
    }
    out += "]}\n";
  }
  return out;
}

TokenStream deserialize(std::string_view text) {
  TokenStream out;
  int lineno = 0;
  std::size_t pos = 0;
  bool have_id = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
    for (const char* key : {"mol", "i", "kind", "src", "v"})
      if (!j.contains(key))
        throw InputError("line " + std::to_string(lineno) + ": missing key '" +
                         key + "'");
    const std::string mol = j["mol"].get<std::string>();
    if (!have_id) {
      out.mol_id = mol;
      have_id = true;
    } else if (mol != out.mol_id) {
      throw InputError("line " + std::to_string(lineno) +
                       ": molecule id changes mid-stream");
    }
    if (j["i"].get<int>() != static_cast<int>(out.tokens.size()))
      throw InputError("line " + std::to_string(lineno) +
                       ": token position out of order");
    Token t;
    t.kind = kind_from(j["kind"].get<std::string>(), lineno);
    t.source = j["src"].get<int>();
    t.v = j["v"].get<std::vector<double>>();
    out.tokens.push_back(std::move(t));
  }
  return out;
}

}  // namespace moltok
