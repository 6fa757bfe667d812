//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <random>

#include "moltok/chem.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace moltok;

namespace {

int count_order(const Molecule& m, BondOrder o) {
  int n = 0;
  for (const Bond& b : m.bonds) n += b.order == o ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("ethanol parses to three atoms and two single bonds") {
  const Molecule m = parse_smiles("CCO");
  CHECK(m.num_atoms() == 3);
  CHECK(m.num_bonds() == 2);
  CHECK(count_order(m, BondOrder::Single) == 2);
  CHECK(m.atoms[2].element == 8);
  for (const Atom& a : m.atoms) CHECK_FALSE(a.in_ring);
}

TEST_CASE("benzene parses aromatic and cyclic") {
  const Molecule m = parse_smiles("c1ccccc1");
  CHECK(m.num_atoms() == 6);
  CHECK(m.num_bonds() == 6);
  CHECK(count_order(m, BondOrder::Aromatic) == 6);
  for (const Atom& a : m.atoms) {
    CHECK(a.aromatic);
    CHECK(a.in_ring);
    CHECK(a.element == 6);
  }
  for (const Bond& b : m.bonds) CHECK(b.in_ring);
}

TEST_CASE("acetylcarnitine has 14 heavy atoms and a +/- pair") {
  // Frozen from an independent hand count of the string: 14 heavy atoms,
  // carboxylate O- and quaternary N+.
  const Molecule m = parse_smiles("CC(=O)OC(CC(=O)[O-])C[N+](C)(C)C");
  CHECK(m.num_atoms() == 14);
  int plus = 0, minus = 0;
  for (const Atom& a : m.atoms) {
    if (a.formal_charge == 1) ++plus;
    if (a.formal_charge == -1) ++minus;
  }
  CHECK(plus == 1);
  CHECK(minus == 1);
}

TEST_CASE("implicit hydrogen counts") {
  CHECK(implicit_hydrogens(parse_smiles("C"), 0) == 4);
  const Molecule acid = parse_smiles("CC(=O)O");
  CHECK(implicit_hydrogens(acid, 3) == 1);  // hydroxyl oxygen
  CHECK(implicit_hydrogens(acid, 2) == 0);  // carbonyl oxygen
  const Molecule carboxylate = parse_smiles("CC(=O)[O-]");
  CHECK(implicit_hydrogens(carboxylate, 3) == 0);  // bracket without H
  // Aromatic carbons: two 1.5 bonds sum to 3, leaving one H.
  const Molecule benzene = parse_smiles("c1ccccc1");
  for (int i = 0; i < 6; ++i) CHECK(implicit_hydrogens(benzene, i) == 1);
  // Fused junction carbons carry three aromatic bonds: floor(4.5) = 4.
  const Molecule naph = parse_smiles("c1ccc2ccccc2c1");
  int h_total = 0;
  for (int i = 0; i < naph.num_atoms(); ++i) h_total += implicit_hydrogens(naph, i);
  CHECK(h_total == 8);
  CHECK(implicit_hydrogens(parse_smiles("[CH4]"), 0) == 4);
}

TEST_CASE("ring flags") {
  const Molecule cp = parse_smiles("C1CC1");
  for (const Atom& a : cp.atoms) CHECK(a.in_ring);
  for (const Bond& b : cp.bonds) CHECK(b.in_ring);

  const Molecule chain = parse_smiles("CCO");
  for (const Atom& a : chain.atoms) CHECK_FALSE(a.in_ring);

  const Molecule tail = parse_smiles("C1CC1CC");
  int ring_atoms = 0, ring_bonds = 0;
  for (const Atom& a : tail.atoms) ring_atoms += a.in_ring ? 1 : 0;
  for (const Bond& b : tail.bonds) ring_bonds += b.in_ring ? 1 : 0;
  CHECK(ring_atoms == 3);
  CHECK(ring_bonds == 3);
}

TEST_CASE("ring flags equal the remove-and-reconnect oracle") {
  std::mt19937_64 rng(20260809);
  for (int trial = 0; trial < 300; ++trial) {
    Molecule m = testutil::random_molecule(rng, 12);
    for (int bi = 0; bi < m.num_bonds(); ++bi)
      CHECK(m.bonds[bi].in_ring == oracles::oracle_bond_in_ring(m, bi));
    for (const Atom& a : m.atoms) {
      bool touches_ring_bond = false;
      for (int bi : m.adj_bonds[a.index])
        touches_ring_bond |= oracles::oracle_bond_in_ring(m, bi);
      CHECK(a.in_ring == touches_ring_bond);
    }
  }
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse_smiles("CC(C"), InputError);
  CHECK_THROWS_AS(parse_smiles("CC)C"), InputError);
  CHECK_THROWS_AS(parse_smiles("C1CC"), InputError);
  CHECK_THROWS_AS(parse_smiles("C[Zz]C"), InputError);
  CHECK_THROWS_AS(parse_smiles("[CH9]"), InputError);  // 9 H + 0 bonds > 8
  CHECK_THROWS_AS(parse_smiles("C=="), InputError);
  CHECK_THROWS_AS(parse_smiles("C11"), InputError);
  CHECK_THROWS_AS(parse_smiles(""), InputError);
  CHECK_THROWS_AS(parse_smiles("C.C"), InputError);
  try {
    parse_smiles("CC(C");
  } catch (const InputError& e) {
    CHECK(e.offset() >= 0);
  }
  CHECK_NOTHROW(parse_smiles("[CH8]"));
}

TEST_CASE("bracket tags parse and stay inert") {
  const Molecule m = parse_smiles("[13C@H](F)(Cl)Br");
  CHECK(m.atoms[0].isotope == 13);
  CHECK(m.atoms[0].explicit_h == 1);
  CHECK(m.atoms[0].chirality == Chirality::Ccw);
  CHECK(m.num_atoms() == 4);
  const Molecule st = parse_smiles("F/C=C/F");
  CHECK(st.bonds[0].stereo == BondStereo::Up);
  CHECK(st.bonds[1].order == BondOrder::Double);
  const Molecule two = parse_smiles("[O--]");
  CHECK(two.atoms[0].formal_charge == -2);
  const Molecule arsonic = parse_smiles("C1=CC=C(C=C1)[As](=O)(O)[O-]");
  CHECK(arsonic.atoms[6].element == 33);
}

TEST_CASE("percent ring closures") {
  const Molecule m = parse_smiles("C%10CC%10");
  CHECK(m.num_bonds() == 3);
  for (const Bond& b : m.bonds) CHECK(b.in_ring);
}

TEST_CASE("every molecule string printed in the upstream caption and QA "
          "examples parses") {
  const char* corpus[] = {
      "CC(=O)OC(CC(=O)[O-])C[N+](C)(C)C",
      "CCN(CC)CCOC(=O)C(Cc1cccc2ccccc12)CC1CCCO1",
      "Cc1c2[nH]c(c1CCC(=O)O)Cc1[nH]c(c(CCC(=O)O)c1C)Cc1[nH]c(c(CCC(=O)O)c1C)"
      "Cc1[nH]c(c(C)c1CCC(=O)O)C2",
      "COC1=CC=CC2=C1C(=CN2)C/C(=N/OS(=O)(=O)[O-])/"
      "S[C@H]3[C@@H]([C@H]([C@@H]([C@H](O3)CO)O)O)O",
      "CN(C)C(=O)C(CCN1CCC(CC1)(C2=CC=C(C=C2)Cl)O)(C3=CC=CC=C3)C4=CC=CC=C4",
  };
  for (const char* s : corpus) {
    const Molecule m = parse_smiles(s);
    CHECK(m.num_atoms() > 0);
    // Handshake: degree sum equals twice the bond count.
    int degsum = 0;
    for (int u = 0; u < m.num_atoms(); ++u) degsum += m.degree(u);
    CHECK(degsum == 2 * m.num_bonds());
  }
}

TEST_CASE("parsing is deterministic on generated strings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Molecule gen = testutil::random_molecule(rng, 20);
    const std::string smi = testutil::write_smiles(gen);
    CAPTURE(smi);
    const Molecule a = parse_smiles(smi);
    const Molecule b = parse_smiles(smi);
    REQUIRE(a.num_atoms() == b.num_atoms());
    REQUIRE(a.num_bonds() == b.num_bonds());
    for (int i = 0; i < a.num_atoms(); ++i) {
      CHECK(a.atoms[i].element == b.atoms[i].element);
      CHECK(a.atoms[i].formal_charge == b.atoms[i].formal_charge);
      CHECK(a.atoms[i].aromatic == b.atoms[i].aromatic);
      CHECK(a.atoms[i].in_ring == b.atoms[i].in_ring);
    }
    for (int i = 0; i < a.num_bonds(); ++i) {
      CHECK(a.bonds[i].a == b.bonds[i].a);
      CHECK(a.bonds[i].b == b.bonds[i].b);
      CHECK(a.bonds[i].order == b.bonds[i].order);
    }
    // Round-trip preserves the graph shape.
    CHECK(a.num_atoms() == gen.num_atoms());
    CHECK(a.num_bonds() == gen.num_bonds());
    int degsum = 0;
    for (int u = 0; u < a.num_atoms(); ++u) degsum += a.degree(u);
    CHECK(degsum == 2 * a.num_bonds());
  }
}
