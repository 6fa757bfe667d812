//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_SMARTS_HPP
#define MOLTOK_SMARTS_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moltok/chem.hpp"

namespace moltok {

// Two grammars share one compiler and matcher. Table7 is the public,
// restricted grammar of the functional-group registry: element symbols,
// #n, comma-OR / semicolon-AND, D<n>, H<n>, R0, charges, wildcard * at
// position 0, explicit bonds - = #, ring-closure digits. Internal adds what
// the fragmentation rule table needs: aromatic symbols, !negation,
// $(recursive) environments, R, and the bond primitives : @ with negation.
enum class SmartsDialect { Table7, Internal };

struct SmartsPattern;

struct AtomPrim {
  enum class Kind : std::uint8_t {
    Element,    // value = atomic number; aromatic: -1 any / 0 aliphatic / 1 aromatic
    Degree,     // value = explicit connection count
    HCount,     // value = attached hydrogen count
    Ring,       // value = 1 in ring, 0 not in ring
    Charge,     // value = formal charge
    Recursive,  // sub pattern rooted at its first atom
  };
  Kind kind = Kind::Element;
  bool negated = false;
  int value = 0;
  int aromatic = -1;
  std::shared_ptr<SmartsPattern> sub;
};

struct AtomSpec {
  // AND over factors, OR within a factor. Empty means wildcard.
  std::vector<std::vector<AtomPrim>> factors;
  bool wildcard = false;

  bool matches(const Molecule& mol, int u) const;
};

struct BondSpec {
  struct Prim {
    char code = '-';  // one of - = # : @
    bool negated = false;
  };
  // AND over prims; empty means the SMARTS default single-or-aromatic.
  std::vector<Prim> prims;

  bool matches(const Bond& b) const;
};

struct PatternBond {
  int a = 0;
  int b = 0;
  BondSpec spec;
};

struct SmartsPattern {
  std::vector<AtomSpec> atoms;
  std::vector<PatternBond> bonds;
  // adj[i] lists (neighbor atom, bond index) pairs.
  std::vector<std::vector<std::pair<int, int>>> adj;
  bool attachment = false;  // atoms[0] is the * attachment point
  std::string source;

  int num_atoms() const { return static_cast<int>(atoms.size()); }
};

// Compiles a pattern, throwing InputError naming the offending token for
// anything outside the dialect.
SmartsPattern parse_smarts(std::string_view text,
                           SmartsDialect dialect = SmartsDialect::Table7);

// All injective mappings of pattern atoms onto molecule atoms, deduplicated
// by the set of matched non-wildcard atoms; one representative tuple per
// set, in discovery order. Attachment wildcards map to any heavy atom.
std::vector<std::vector<int>> find_matches(const Molecule& mol,
                                           const SmartsPattern& pattern);

// True when some injective mapping pins pattern atom 0 onto `root`.
bool match_rooted(const Molecule& mol, const SmartsPattern& pattern, int root);

struct FunctionalGroup {
  std::string repr;    // chemical representation column, cosmetic
  std::string smarts;
  std::string name;
  SmartsPattern pattern;
};

// The 38 active functional groups, in file order. Display names are not
// unique ("Imines" appears twice); group identity is the entry.
class FunctionalGroupRegistry {
public:
  static FunctionalGroupRegistry load(std::istream& in);
  static FunctionalGroupRegistry load_file(const std::string& path);
  // Compiled-in copy of data/functional_groups.tsv.
  static const FunctionalGroupRegistry& builtin();

  const std::vector<FunctionalGroup>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

private:
  std::vector<FunctionalGroup> entries_;
};

// Deduplicated match count per registry entry, index-aligned with entries().
std::vector<int> detect_group_counts(const Molecule& mol,
                                     const FunctionalGroupRegistry& registry);

// Name -> count in registry order, zero-count entries omitted, duplicate
// display names merged by summing.
std::vector<std::pair<std::string, int>> detect_functional_groups(
    const Molecule& mol, const FunctionalGroupRegistry& registry);

namespace detail {
const char* builtin_registry_text();
}

}  // namespace moltok

#endif  // MOLTOK_SMARTS_HPP
