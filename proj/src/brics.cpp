//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/brics.hpp"

#include <algorithm>
#include <array>
#include <memory>

#include "moltok/smarts.hpp"

namespace moltok {

namespace {

// The 16 link environments of the BRICS rule table, as published in the
// RDKit implementation (L2 is folded into the general amine L5 there).
// Index 0 and 2 unused.
constexpr std::array<const char*, 17> kEnvSmarts = {
    nullptr,
    "[C;D3]([#0,#6,#7,#8])(=O)",                                      // L1
    nullptr,
    "[O;D2]-;!@[#0,#6,#1]",                                           // L3
    "[C;!D1;!$(C=*)]-;!@[#6]",                                        // L4
    "[N;!D1;!$(N=*);!$(N-[!#6;!#16;!#0;!#1]);!$([N;R]@[C;R]=O)]",     // L5
    "[C;D3;!R](=O)-;!@[#0,#6,#7,#8]",                                 // L6
    "[C;D2,D3]-[#6]",                                                 // L7
    "[C;!R;!D1;!$(C!-*)]",                                            // L8
    "[n;+0;$(n(:[c,n,o,s]):[c,n,o,s])]",                              // L9
    "[N;R;$(N(@C(=O))@[C,N,O,S])]",                                   // L10
    "[S;D2](-;!@[#0,#6])",                                            // L11
    "[S;D4]([#6,#0])(=O)(=O)",                                        // L12
    "[C;$(C(-;@[C,N,O,S])-;@[N,O,S])]",                               // L13
    "[c;$(c(:[c,n,o,s]):[n,o,s])]",                                   // L14
    "[C;$(C(-;@C)-;@C)]",                                             // L15
    "[c;$(c(:c):c)]",                                                 // L16
};

struct LinkRule {
  int a;
  int b;
  BondOrder order;
};

constexpr std::array<LinkRule, 50> kRules = {{
    {1, 3, BondOrder::Single},   {1, 5, BondOrder::Single},
    {1, 10, BondOrder::Single},  {3, 4, BondOrder::Single},
    {3, 13, BondOrder::Single},  {3, 14, BondOrder::Single},
    {3, 15, BondOrder::Single},  {3, 16, BondOrder::Single},
    {4, 5, BondOrder::Single},   {4, 11, BondOrder::Single},
    {5, 12, BondOrder::Single},  {5, 14, BondOrder::Single},
    {5, 16, BondOrder::Single},  {5, 13, BondOrder::Single},
    {5, 15, BondOrder::Single},  {6, 13, BondOrder::Single},
    {6, 14, BondOrder::Single},  {6, 15, BondOrder::Single},
    {6, 16, BondOrder::Single},  {7, 7, BondOrder::Double},
    {8, 9, BondOrder::Single},   {8, 10, BondOrder::Single},
    {8, 13, BondOrder::Single},  {8, 14, BondOrder::Single},
    {8, 15, BondOrder::Single},  {8, 16, BondOrder::Single},
    {9, 13, BondOrder::Single},  {9, 14, BondOrder::Single},
    {9, 15, BondOrder::Single},  {9, 16, BondOrder::Single},
    {10, 13, BondOrder::Single}, {10, 14, BondOrder::Single},
    {10, 15, BondOrder::Single}, {10, 16, BondOrder::Single},
    {11, 13, BondOrder::Single}, {11, 14, BondOrder::Single},
    {11, 15, BondOrder::Single}, {11, 16, BondOrder::Single},
    {12, 13, BondOrder::Single}, {12, 14, BondOrder::Single},
    {12, 15, BondOrder::Single}, {12, 16, BondOrder::Single},
    {13, 14, BondOrder::Single}, {13, 15, BondOrder::Single},
    {13, 16, BondOrder::Single}, {14, 14, BondOrder::Single},
    {14, 15, BondOrder::Single}, {14, 16, BondOrder::Single},
    {15, 16, BondOrder::Single}, {16, 16, BondOrder::Single},
}};

const std::array<std::unique_ptr<SmartsPattern>, 17>& env_patterns() {
  static const auto patterns = [] {
    std::array<std::unique_ptr<SmartsPattern>, 17> out;
    for (int i = 1; i <= 16; ++i) {
      if (kEnvSmarts[i] == nullptr) continue;
      out[i] = std::make_unique<SmartsPattern>(
          parse_smarts(kEnvSmarts[i], SmartsDialect::Internal));
    }
    return out;
  }();
  return patterns;
}

}  // namespace

std::vector<int> brics_cleavable_bonds(const Molecule& mol) {
  const auto& envs = env_patterns();
  // Environment membership is per atom; cache lazily.
  std::vector<std::array<signed char, 17>> cache(
      mol.num_atoms(), std::array<signed char, 17>{});
  auto env = [&](int num, int atom) {
    signed char& slot = cache[atom][num];
    if (slot == 0)
      slot = match_rooted(mol, *envs[num], atom) ? 1 : -1;
    return slot == 1;
  };

  auto check = [&](const LinkRule& rule, const Bond& bond) {
    if (bond.order != rule.order) return false;
    return (env(rule.a, bond.a) && env(rule.b, bond.b)) ||
           (env(rule.a, bond.b) && env(rule.b, bond.a));
  };

  std::vector<int> out;
  for (int bi = 0; bi < mol.num_bonds(); ++bi) {
    const Bond& bond = mol.bonds[bi];
    if (bond.in_ring) continue;
    bool hit = false;
    for (const LinkRule& rule : kRules)
      if (check(rule, bond)) {
        hit = true;
        break;
      }
    if (hit) out.push_back(bi);
  }
  return out;
}

std::vector<Motif> fragment(const Molecule& mol) {
  const std::vector<int> cut = brics_cleavable_bonds(mol);
  std::vector<bool> is_cut(mol.num_bonds(), false);
  for (int bi : cut) is_cut[bi] = true;

  const int n = mol.num_atoms();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> groups;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(groups.size());
    groups.emplace_back();
    std::vector<int> todo{s};
    comp[s] = id;
    while (!todo.empty()) {
      const int u = todo.back();
      todo.pop_back();
      groups[id].push_back(u);
      for (std::size_t i = 0; i < mol.adj[u].size(); ++i) {
        if (is_cut[mol.adj_bonds[u][i]]) continue;
        const int v = mol.adj[u][i];
        if (comp[v] < 0) {
          comp[v] = id;
          todo.push_back(v);
        }
      }
    }
    std::sort(groups[id].begin(), groups[id].end());
  }
  // Scanning atoms in order already yields smallest-first ordering.
  std::vector<Motif> motifs;
  motifs.reserve(groups.size() + 1);
  for (std::size_t i = 0; i < groups.size(); ++i)
    motifs.push_back({static_cast<int>(i) + 1, std::move(groups[i]), false});
  Motif whole;
  whole.id = static_cast<int>(motifs.size()) + 1;
  whole.is_graph_motif = true;
  whole.atoms.resize(n);
  for (int i = 0; i < n; ++i) whole.atoms[i] = i;
  motifs.push_back(std::move(whole));
  return motifs;
}

}  // namespace moltok
