//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <random>
#include <set>

#include "moltok/brics.hpp"
#include "moltok/chem.hpp"
#include "testutil.hpp"

using namespace moltok;
using nlohmann::json;

namespace {

json load_fixtures() {
  std::ifstream in(std::string(MOLTOK_SOURCE_DIR) +
                   "/tests/fixtures/brics_fixtures.json");
  REQUIRE(in.good());
  return json::parse(in);
}

std::set<std::pair<int, int>> cleaved_pairs(const Molecule& m) {
  std::set<std::pair<int, int>> out;
  for (int bi : brics_cleavable_bonds(m)) {
    const Bond& b = m.bonds[bi];
    out.insert({std::min(b.a, b.b), std::max(b.a, b.b)});
  }
  return out;
}

}  // namespace

TEST_CASE("nothing in ethane is cleavable") {
  CHECK(brics_cleavable_bonds(parse_smiles("CC")).empty());
}

TEST_CASE("toluene methyl survives: terminal carbons have no environment") {
  CHECK(brics_cleavable_bonds(parse_smiles("c1ccccc1C")).empty());
}

TEST_CASE("ester cleaves on both sides of the oxygen") {
  // Frozen from the oracle fixtures: acyl C-O and alkoxy O-C both cut,
  // leaving a lone-oxygen motif (k = 3).
  const Molecule m = parse_smiles("CCOC(=O)CC");
  const auto cut = cleaved_pairs(m);
  CHECK(cut == std::set<std::pair<int, int>>{{1, 2}, {2, 3}});
  const auto motifs = fragment(m);
  CHECK(motifs.size() == 4);  // 3 fragments + whole graph
  CHECK(motifs[1].atoms == std::vector<int>{2});
}

TEST_CASE("nothing cleavable means one motif plus the graph motif") {
  const auto motifs = fragment(parse_smiles("CCO"));
  REQUIRE(motifs.size() == 2);
  CHECK(motifs[0].id == 1);
  CHECK(motifs[0].atoms == std::vector<int>{0, 1, 2});
  CHECK_FALSE(motifs[0].is_graph_motif);
  CHECK(motifs[1].is_graph_motif);
  CHECK(motifs[1].atoms == std::vector<int>{0, 1, 2});

  const auto ring = fragment(parse_smiles("c1ccccc1"));
  CHECK(ring.size() == 2);
}

TEST_CASE("fragmentation matches the frozen oracle fixtures") {
  const json fixtures = load_fixtures();
  REQUIRE(fixtures.size() >= 50);
  for (const auto& rec : fixtures) {
    const std::string smiles = rec["smiles"];
    CAPTURE(smiles);
    const Molecule m = parse_smiles(smiles);
    REQUIRE(m.num_atoms() == rec["atoms"].get<int>());
    REQUIRE(m.num_bonds() == rec["bonds"].get<int>());

    // Parser cross-check against the independent reference parser.
    std::set<int> aroma;
    for (const Atom& a : m.atoms)
      if (a.aromatic) aroma.insert(a.index);
    CHECK(aroma == std::set<int>(rec["aromatic_atoms"].begin(),
                                 rec["aromatic_atoms"].end()));
    std::set<std::pair<int, int>> ring_bonds;
    for (const Bond& b : m.bonds)
      if (b.in_ring) ring_bonds.insert({std::min(b.a, b.b), std::max(b.a, b.b)});
    std::set<std::pair<int, int>> want_rings;
    for (const auto& p : rec["ring_bonds"])
      want_rings.insert({p[0].get<int>(), p[1].get<int>()});
    CHECK(ring_bonds == want_rings);

    // Cleavable bond set.
    std::set<std::pair<int, int>> want_cut;
    for (const auto& p : rec["cleavable"])
      want_cut.insert({p[0].get<int>(), p[1].get<int>()});
    CHECK(cleaved_pairs(m) == want_cut);

    // Motif partition, dummy-free atom sets.
    const auto motifs = fragment(m);
    REQUIRE_FALSE(motifs.empty());
    const int k = static_cast<int>(motifs.size()) - 1;
    CHECK(k == rec["k"].get<int>());
    for (int i = 0; i < k; ++i) {
      const auto want = rec["motifs"][i].get<std::vector<int>>();
      CHECK(motifs[i].atoms == want);
      CHECK(motifs[i].id == i + 1);
      CHECK_FALSE(motifs[i].is_graph_motif);
    }
    CHECK(motifs.back().is_graph_motif);
    CHECK(static_cast<int>(motifs.back().atoms.size()) == m.num_atoms());
  }
}

TEST_CASE("motifs partition the atom set on random molecules") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 400; ++trial) {
    const Molecule m = testutil::random_molecule(rng, 20);
    const auto motifs = fragment(m);
    REQUIRE(motifs.size() >= 2);
    std::vector<int> owner(m.num_atoms(), -1);
    for (std::size_t i = 0; i + 1 < motifs.size(); ++i) {
      for (int a : motifs[i].atoms) {
        CHECK(owner[a] == -1);
        owner[a] = motifs[i].id;
      }
      // Connectivity of the induced subgraph.
      std::set<int> members(motifs[i].atoms.begin(), motifs[i].atoms.end());
      std::set<int> seen;
      std::vector<int> todo{motifs[i].atoms[0]};
      seen.insert(motifs[i].atoms[0]);
      while (!todo.empty()) {
        const int u = todo.back();
        todo.pop_back();
        for (int v : m.adj[u])
          if (members.count(v) && !seen.count(v)) {
            seen.insert(v);
            todo.push_back(v);
          }
      }
      CHECK(seen.size() == members.size());
    }
    for (int a = 0; a < m.num_atoms(); ++a) CHECK(owner[a] >= 0);
    // Determinism.
    const auto again = fragment(m);
    REQUIRE(again.size() == motifs.size());
    for (std::size_t i = 0; i < motifs.size(); ++i)
      CHECK(again[i].atoms == motifs[i].atoms);
  }
}
