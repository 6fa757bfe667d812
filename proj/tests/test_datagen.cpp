//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <fstream>
#include <set>

#include "moltok/datagen.hpp"

using namespace moltok;

namespace {

const FunctionalGroupRegistry& reg() {
  return FunctionalGroupRegistry::builtin();
}

int detected_entries(const Molecule& m) {
  int n = 0;
  for (int c : detect_group_counts(m, reg())) n += c > 0 ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("per-molecule item count is positives plus min(6, 38 - positives)") {
  std::ifstream in(std::string(MOLTOK_SOURCE_DIR) + "/tests/fixtures/corpus.smi");
  REQUIRE(in.good());
  std::string line;
  std::uint64_t ordinal = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const Molecule m = parse_smiles(line);
    const auto items = gen_motifhallu(m, reg(), "id", line, 99, ordinal++);
    const int pos = detected_entries(m);
    int got_pos = 0, got_neg = 0;
    for (const QAItem& q : items) (q.yes ? got_pos : got_neg)++;
    CHECK(got_pos == pos);
    CHECK(got_neg == std::min(6, 38 - pos));
    // Every question parses back under the template grammar.
    for (const QAItem& q : items) {
      const std::string head = "Is there a ";
      const std::string tail = " group in the molecule?";
      REQUIRE(q.question.size() > head.size() + tail.size());
      CHECK(q.question.substr(0, head.size()) == head);
      CHECK(q.question.substr(q.question.size() - tail.size()) == tail);
      CHECK(q.question.substr(head.size(),
                              q.question.size() - head.size() - tail.size()) ==
            q.fg_name);
    }
  }
  CHECK(ordinal >= 50);
}

TEST_CASE("ethanol yields one positive and six negatives") {
  const Molecule m = parse_smiles("CCO");
  const auto items = gen_motifhallu(m, reg(), "id", "CCO", 1, 0);
  CHECK(items.size() == 7);
  CHECK(items[0].yes);
  CHECK(items[0].fg_name == "side-chain hydroxyls");
}

TEST_CASE("questions follow the published phrasing") {
  CHECK(motifhallu_question("methyl ester sulfonyl") ==
        "Is there a methyl ester sulfonyl group in the molecule?");
  CHECK(motifhallu_question("carbonyl methyl ester") ==
        "Is there a carbonyl methyl ester group in the molecule?");
  CHECK(motifhallu_question("terminal aldehyde") ==
        "Is there a terminal aldehyde group in the molecule?");
}

TEST_CASE("sulfated indole QA example: methyl ester sulfonyl is negative") {
  const std::string smiles =
      "COC1=CC=CC2=C1C(=CN2)C/C(=N/OS(=O)(=O)[O-])/"
      "S[C@H]3[C@@H]([C@H]([C@@H]([C@H](O3)CO)O)O)O";
  const Molecule m = parse_smiles(smiles);
  const auto items = gen_motifhallu(m, reg(), "id", smiles, 7, 0);
  for (const QAItem& q : items)
    if (q.fg_name == "methyl ester sulfonyl") CHECK_FALSE(q.yes);
  for (const QAItem& q : items)
    if (q.yes) CHECK(q.fg_name != "methyl ester sulfonyl");
}

TEST_CASE("positives always match, sampled negatives never do") {
  std::ifstream in(std::string(MOLTOK_SOURCE_DIR) + "/tests/fixtures/corpus.smi");
  std::string line;
  std::uint64_t ordinal = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const Molecule m = parse_smiles(line);
    if (m.num_atoms() > 14) continue;
    const auto counts = detect_group_counts(m, reg());
    const auto items = gen_motifhallu(m, reg(), "id", line, 3, ordinal++);
    for (const QAItem& q : items) {
      // Resolve the item's entry: a yes item names a detected entry, a no
      // item must name an entry with zero matches under the same name.
      int matched = 0, unmatched = 0;
      for (int i = 0; i < reg().size(); ++i) {
        if (reg().entries()[i].name != q.fg_name) continue;
        (counts[i] > 0 ? matched : unmatched)++;
      }
      if (q.yes)
        CHECK(matched > 0);
      else
        CHECK(unmatched > 0);
    }
  }
}

TEST_CASE("generation is deterministic per (seed, ordinal)") {
  const Molecule m = parse_smiles("CC(=O)OC(CC(=O)[O-])C[N+](C)(C)C");
  const auto a = gen_motifhallu(m, reg(), "id", "s", 12345, 7);
  const auto b = gen_motifhallu(m, reg(), "id", "s", 12345, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].fg_name == b[i].fg_name);
    CHECK(a[i].yes == b[i].yes);
    CHECK(a[i].question == b[i].question);
  }
  const auto c = gen_motifhallu(m, reg(), "id", "s", 12346, 7);
  bool any_diff = a.size() != c.size();
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
    any_diff |= a[i].fg_name != c[i].fg_name;
  CHECK(any_diff);  // different seed, different negative sample
}

TEST_CASE("acylcarnitine caption starts with the carboxylic sentence") {
  const std::string smiles = "CC(=O)OC(CC(=O)[O-])C[N+](C)(C)C";
  const Molecule m = parse_smiles(smiles);
  const auto rec = augment_caption(m, smiles, "This molecule is an O-acylcarnitine.",
                                   reg(), 4, 3, 0);
  CHECK(rec.augmented.rfind("This molecule has 1 carboxylic acids functional group.",
                            0) == 0);
  CHECK(rec.augmented.find("This molecule has no ") != std::string::npos);
  CHECK(rec.augmented.find("This molecule is an O-acylcarnitine.") !=
        std::string::npos);
  // Negative sentence joins four names: "a, or b, or c or d".
  const std::size_t neg = rec.augmented.find("This molecule has no ");
  const std::size_t stop = rec.augmented.find(" groups.", neg);
  REQUIRE(stop != std::string::npos);
  const std::string clause = rec.augmented.substr(neg, stop - neg);
  int or_count = 0;
  std::size_t p = 0;
  while ((p = clause.find(" or ", p)) != std::string::npos) {
    ++or_count;
    p += 4;
  }
  CHECK(or_count == 3);  // four names, three joiners
}

TEST_CASE("molecule without detected groups gets the zero sentence only") {
  const std::string smiles = "CCN(CC)CC";
  const Molecule m = parse_smiles(smiles);
  REQUIRE(detected_entries(m) == 0);
  const auto rec = augment_caption(m, smiles, "A tertiary amine.", reg(), 4, 1, 0);
  CHECK(rec.augmented ==
        "This molecule has 0 functional groups. A tertiary amine.");
}

TEST_CASE("k_neg zero suppresses the negative sentence") {
  const std::string smiles = "CCO";
  const Molecule m = parse_smiles(smiles);
  const auto rec = augment_caption(m, smiles, "Ethanol.", reg(), 0, 1, 0);
  CHECK(rec.augmented.find("has no") == std::string::npos);
  CHECK(rec.augmented.rfind("This molecule has 1 side-chain hydroxyls "
                            "functional group.", 0) == 0);
}

TEST_CASE("plural form follows the count") {
  // Glycerol: three hydroxyls.
  const Molecule m = parse_smiles("OCC(O)CO");
  const auto rec = augment_caption(m, "OCC(O)CO", "", reg(), 0, 1, 0);
  CHECK(rec.augmented.rfind("This molecule has 3 side-chain hydroxyls "
                            "functional groups.", 0) == 0);
}
