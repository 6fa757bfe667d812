//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_TESTS_TESTUTIL_HPP
#define MOLTOK_TESTS_TESTUTIL_HPP

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "moltok/chem.hpp"

namespace moltok::testutil {

inline std::uint64_t bits(std::mt19937_64& rng) { return rng(); }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random connected molecule: a tree plus a few ring-closing edges, organic
// subset elements, sane degrees. Occasionally grafts an aromatic benzene
// ring so aromatic bonds show up.
inline Molecule random_molecule(std::mt19937_64& rng, int max_atoms = 24) {
  const int n = uniform_int(rng, 1, max_atoms);
  Molecule mol;
  mol.atoms.resize(n);
  auto pick_element = [&](int& z) {
    const double r = uniform01(rng);
    if (r < 0.70) z = 6;
    else if (r < 0.80) z = 7;
    else if (r < 0.90) z = 8;
    else if (r < 0.94) z = 16;
    else if (r < 0.96) z = 15;
    else if (r < 0.98) z = 9;
    else z = 17;
  };
  std::vector<int> deg(n, 0);
  auto max_degree = [&](int u) {
    switch (mol.atoms[u].element) {
      case 9: case 17: return 1;
      case 8: return 2;
      case 7: case 15: return 3;
      default: return 4;
    }
  };
  for (int i = 0; i < n; ++i) {
    mol.atoms[i].index = i;
    pick_element(mol.atoms[i].element);
    if (uniform01(rng) < 0.04) {
      mol.atoms[i].formal_charge = uniform01(rng) < 0.5 ? -1 : 1;
      mol.atoms[i].bracket = true;
      mol.atoms[i].explicit_h = 0;
    }
  }
  auto add_bond = [&](int a, int b, BondOrder order) {
    mol.bonds.push_back({a, b, order, BondStereo::None, false});
    ++deg[a];
    ++deg[b];
  };
  for (int i = 1; i < n; ++i) {
    // Attach to a random earlier atom with spare valence.
    std::vector<int> cands;
    for (int j = 0; j < i; ++j)
      if (deg[j] < max_degree(j)) cands.push_back(j);
    int parent = cands.empty() ? i - 1 : cands[uniform_int(rng, 0, static_cast<int>(cands.size()) - 1)];
    BondOrder order = BondOrder::Single;
    const double r = uniform01(rng);
    if (r < 0.12 && deg[parent] + 1 < max_degree(parent) && max_degree(i) >= 2)
      order = BondOrder::Double;
    add_bond(parent, i, order);
    if (order == BondOrder::Double) ++deg[parent], ++deg[i];  // double uses 2 valences
  }
  // A few ring closures.
  const int extra = uniform_int(rng, 0, std::max(0, n / 8));
  for (int e = 0; e < extra; ++e) {
    const int a = uniform_int(rng, 0, n - 1);
    const int b = uniform_int(rng, 0, n - 1);
    if (a == b || deg[a] >= max_degree(a) || deg[b] >= max_degree(b)) continue;
    bool dup = false;
    for (const Bond& bd : mol.bonds)
      if ((bd.a == a && bd.b == b) || (bd.a == b && bd.b == a)) dup = true;
    if (!dup) add_bond(a, b, BondOrder::Single);
  }
  mol.rebuild_adjacency();
  compute_ring_flags(mol);
  return mol;
}

// Relabels atoms by `perm` (new index = perm[old index]).
inline Molecule permute_molecule(const Molecule& mol, const std::vector<int>& perm) {
  Molecule out;
  out.source = mol.source;
  out.atoms.resize(mol.atoms.size());
  for (std::size_t i = 0; i < mol.atoms.size(); ++i) {
    Atom a = mol.atoms[i];
    a.index = perm[i];
    out.atoms[perm[i]] = a;
  }
  for (const Bond& b : mol.bonds) {
    Bond nb = b;
    nb.a = perm[b.a];
    nb.b = perm[b.b];
    out.bonds.push_back(nb);
  }
  out.rebuild_adjacency();
  compute_ring_flags(out);
  return out;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[uniform_int(rng, 0, i)]);
  return perm;
}

// Minimal SMILES writer for generated molecules (test corpus production
// only): DFS spanning tree, ring closures as %nn, brackets for charged
// atoms. Not canonical, just valid for our parser subset.
inline std::string write_smiles(const Molecule& mol) {
  std::string out;
  std::vector<bool> visited(mol.atoms.size(), false);
  std::vector<std::vector<std::pair<int, int>>> closures(mol.atoms.size());
  std::vector<bool> bond_in_tree(mol.bonds.size(), false);

  // Assign closure digits to the non-tree edges found by a first DFS pass.
  {
    std::vector<bool> seen(mol.atoms.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int next_digit = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < mol.adj[u].size(); ++i) {
        int v = mol.adj[u][i];
        int bi = mol.adj_bonds[u][i];
        if (!seen[v]) {
          seen[v] = true;
          bond_in_tree[bi] = true;
          stack.push_back(v);
        }
      }
    }
    for (std::size_t bi = 0; bi < mol.bonds.size(); ++bi) {
      if (bond_in_tree[bi]) continue;
      const int d = next_digit++;
      closures[mol.bonds[bi].a].push_back({d, static_cast<int>(bi)});
      closures[mol.bonds[bi].b].push_back({d, static_cast<int>(bi)});
    }
  }

  auto bond_symbol = [](BondOrder o) -> const char* {
    switch (o) {
      case BondOrder::Single: return "";
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
      case BondOrder::Aromatic: return ":";
    }
    return "";
  };
  auto atom_token = [&](const Atom& a) {
    std::string sym = element_symbol(a.element);
    const bool organic = a.element == 5 || a.element == 6 || a.element == 7 ||
                         a.element == 8 || a.element == 9 || a.element == 15 ||
                         a.element == 16 || a.element == 17 || a.element == 35 ||
                         a.element == 53;
    if (a.aromatic)
      for (char& c : sym) c = static_cast<char>(std::tolower(c));
    if (a.formal_charge == 0 && organic && !a.bracket) return sym;
    std::string tok = "[" + sym;
    const int h = a.explicit_h.value_or(0);
    if (h > 0) tok += "H" + std::to_string(h);
    if (a.formal_charge > 0)
      tok += "+" + (a.formal_charge > 1 ? std::to_string(a.formal_charge) : "");
    if (a.formal_charge < 0)
      tok += "-" + (a.formal_charge < -1 ? std::to_string(-a.formal_charge) : "");
    return tok + "]";
  };

  std::function<void(int, int)> emit = [&](int u, int via_bond) {
    visited[u] = true;
    if (via_bond >= 0) out += bond_symbol(mol.bonds[via_bond].order);
    out += atom_token(mol.atoms[u]);
    for (auto [d, bi] : closures[u]) {
      out += bond_symbol(mol.bonds[bi].order);
      if (d > 9) {
        out += '%';
        out += static_cast<char>('0' + d / 10);
        out += static_cast<char>('0' + d % 10);
      } else {
        out += static_cast<char>('0' + d);
      }
    }
    std::vector<std::pair<int, int>> kids;
    for (std::size_t i = 0; i < mol.adj[u].size(); ++i) {
      const int v = mol.adj[u][i];
      const int bi = mol.adj_bonds[u][i];
      if (bond_in_tree[bi] && !visited[v]) kids.push_back({v, bi});
    }
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool parens = k + 1 < kids.size();
      if (parens) out += '(';
      emit(kids[k].first, kids[k].second);
      if (parens) out += ')';
    }
  };
  emit(0, -1);
  return out;
}

}  // namespace moltok::testutil

#endif  // MOLTOK_TESTS_TESTUTIL_HPP
