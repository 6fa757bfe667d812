//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "moltok/chem.hpp"
#include "moltok/smarts.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace moltok;

namespace {

const SmartsPattern& fg_pattern(const char* name) {
  for (const FunctionalGroup& fg : FunctionalGroupRegistry::builtin().entries())
    if (fg.name == name) return fg.pattern;
  REQUIRE(false);
  static SmartsPattern dummy;
  return dummy;
}

int count_named(const Molecule& m, const char* name) {
  for (const auto& [n, c] :
       detect_functional_groups(m, FunctionalGroupRegistry::builtin()))
    if (n == name) return c;
  return 0;
}

std::set<std::vector<int>> match_keys(const Molecule& m,
                                      const SmartsPattern& pat) {
  std::set<std::vector<int>> keys;
  for (const auto& assign : find_matches(m, pat)) {
    std::vector<int> key;
    for (int i = 0; i < pat.num_atoms(); ++i)
      if (!pat.atoms[i].wildcard) key.push_back(assign[i]);
    std::sort(key.begin(), key.end());
    keys.insert(key);
  }
  return keys;
}

}  // namespace

TEST_CASE("carboxylic acid pattern compiles as specified") {
  const SmartsPattern p = parse_smarts("*-C(=O)[O;D1]");
  CHECK(p.num_atoms() == 4);
  CHECK(p.attachment);
  bool has_degree_one = false;
  for (const auto& factor : p.atoms[3].factors)
    for (const AtomPrim& prim : factor)
      if (prim.kind == AtomPrim::Kind::Degree && prim.value == 1)
        has_degree_one = true;
  CHECK(has_degree_one);
}

TEST_CASE("cyclopropyl pattern closes a three-ring") {
  const SmartsPattern p = parse_smarts("*-[C;D3]1-[C;D2]-[C;D2]1");
  CHECK(p.num_atoms() == 4);
  CHECK(p.bonds.size() == 4);  // chain of three plus the closure
}

TEST_CASE("unsupported primitives are rejected by name") {
  CHECK_THROWS_WITH_AS(parse_smarts("*-[Q]"),
                       doctest::Contains("unsupported primitive Q"),
                       InputError);
  CHECK_THROWS_AS(parse_smarts("*-[$(C=O)]"), InputError);
  CHECK_THROWS_AS(parse_smarts("*-[!C]"), InputError);
  CHECK_THROWS_AS(parse_smarts("*-[c]"), InputError);
  CHECK_THROWS_AS(parse_smarts("*-[C;R1]"), InputError);
  // The internal dialect accepts all of those.
  CHECK_NOTHROW(parse_smarts("[C;!D1;!$(C=*)]-;!@[#6]", SmartsDialect::Internal));
}

TEST_CASE("carboxylic acids on acetic acid: exactly one match") {
  const Molecule m = parse_smiles("CC(=O)O");
  const auto matches = find_matches(m, fg_pattern("carboxylic acids"));
  CHECK(matches.size() == 1);
  // Against the exhaustive mapping oracle as well.
  CHECK(match_keys(m, fg_pattern("carboxylic acids")) ==
        oracles::oracle_matches(m, fg_pattern("carboxylic acids")));
}

TEST_CASE("formic acid has no heavy attachment atom") {
  const Molecule m = parse_smiles("C(=O)O");
  CHECK(find_matches(m, fg_pattern("carboxylic acids")).empty());
}

TEST_CASE("no terminal aldehyde on the amide QA example") {
  const Molecule m = parse_smiles(
      "CN(C)C(=O)C(CCN1CCC(CC1)(C2=CC=C(C=C2)Cl)O)(C3=CC=CC=C3)C4=CC=CC=C4");
  CHECK(find_matches(m, fg_pattern("terminal aldehyde")).empty());
}

TEST_CASE("no methyl ester sulfonyl on the sulfate QA example") {
  const Molecule m = parse_smiles(
      "COC1=CC=CC2=C1C(=CN2)C/C(=N/OS(=O)(=O)[O-])/"
      "S[C@H]3[C@@H]([C@H]([C@@H]([C@H](O3)CO)O)O)O");
  CHECK(find_matches(m, fg_pattern("methyl ester sulfonyl")).empty());
}

TEST_CASE("detection on the acylcarnitine caption example") {
  const Molecule m = parse_smiles("CC(=O)OC(CC(=O)[O-])C[N+](C)(C)C");
  CHECK(count_named(m, "carboxylic acids") == 1);
}

TEST_CASE("ethanol has no methyl amide") {
  const Molecule m = parse_smiles("CCO");
  CHECK(count_named(m, "methyl amide") == 0);
}

TEST_CASE("registry ships 38 active entries without the ??? row") {
  const FunctionalGroupRegistry& reg = FunctionalGroupRegistry::builtin();
  CHECK(reg.size() == 38);
  for (const FunctionalGroup& fg : reg.entries()) CHECK(fg.name != "???");
  CHECK(reg.entries().front().name == "methyl amide");
  CHECK(reg.entries().back().name == "nitriles");
  CHECK(reg.entries().back().smarts == "*#[N;D1]");
}

TEST_CASE("matcher equals the brute-force oracle on small molecules") {
  const char* corpus[] = {
      "CC(=O)O",       "CC(=O)OC",      "CC(=O)N",      "CC(=O)NC",
      "CC(=O)[O-]",    "CCO",           "CCOC",         "CC(C)(C)C",
      "FC(F)F",        "C#N",           "CC#N",         "N",
      "CN",            "C=O",           "CC=O",         "CC(C)=O",
      "CS",            "CSC",           "CS(=O)C",      "CS(=O)(=O)C",
      "CS(=O)(=O)O",   "CS(=O)(=O)Cl",  "CS(=O)(=O)N",  "C1CC1",
      "C1CC1C",        "c1ccccc1",      "c1ccccc1C",    "Cc1ccccc1O",
      "CN=O",          "C=NO",          "CC=NC",        "CN=C=O",
      "CN=C=S",        "C[N+](C)(C)C",  "CCS",          "ClCCl",
      "C#C",           "CC#C",          "CCN(CC)CC",    "OCC(O)CO",
  };
  const FunctionalGroupRegistry& reg = FunctionalGroupRegistry::builtin();
  for (const char* s : corpus) {
    const Molecule m = parse_smiles(s);
    REQUIRE(m.num_atoms() <= 14);
    for (const FunctionalGroup& fg : reg.entries()) {
      CAPTURE(s);
      CAPTURE(fg.name);
      CHECK(match_keys(m, fg.pattern) == oracles::oracle_matches(m, fg.pattern));
    }
  }
}

TEST_CASE("relabeling atoms never changes the detection map") {
  std::mt19937_64 rng(99);
  const FunctionalGroupRegistry& reg = FunctionalGroupRegistry::builtin();
  for (int trial = 0; trial < 60; ++trial) {
    const Molecule m = testutil::random_molecule(rng, 16);
    const auto perm = testutil::random_permutation(rng, m.num_atoms());
    const Molecule p = testutil::permute_molecule(m, perm);
    auto a = detect_functional_groups(m, reg);
    auto b = detect_functional_groups(p, reg);
    CHECK(a == b);
  }
}

TEST_CASE("explicit single bonds do not match aromatic bonds") {
  // Thiophene sulfur is aromatic; the thioether pattern demands -[S;D2]-.
  const Molecule thiophene = parse_smiles("c1ccsc1");
  CHECK(count_named(thiophene, "methylthio") == 0);
  // The default unwritten bond does match aromatic: benzylic methyl on
  // toluene pairs with the aromatic carbon through the written '-'.
  const Molecule toluene = parse_smiles("Cc1ccccc1");
  CHECK(count_named(toluene, "methylthio") == 0);
}

TEST_CASE("registry data file matches the compiled-in registry byte for byte") {
  const std::string path =
      std::string(MOLTOK_SOURCE_DIR) + "/data/functional_groups.tsv";
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream file_text;
  file_text << in.rdbuf();
  CHECK(file_text.str() == moltok::detail::builtin_registry_text());

  const FunctionalGroupRegistry file_reg =
      FunctionalGroupRegistry::load_file(path);
  const FunctionalGroupRegistry& builtin = FunctionalGroupRegistry::builtin();
  REQUIRE(file_reg.size() == builtin.size());
  for (int i = 0; i < builtin.size(); ++i) {
    CHECK(file_reg.entries()[i].repr == builtin.entries()[i].repr);
    CHECK(file_reg.entries()[i].smarts == builtin.entries()[i].smarts);
    CHECK(file_reg.entries()[i].name == builtin.entries()[i].name);
  }
}
