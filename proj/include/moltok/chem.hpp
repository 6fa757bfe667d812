//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_CHEM_HPP
#define MOLTOK_CHEM_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moltok {

// Thrown on malformed user input (SMILES, SMARTS, corpus files, ...).
// `offset` is a byte offset into the offending text when known, -1 otherwise.
class InputError : public std::runtime_error {
public:
  InputError(std::string msg, long offset = -1)
      : std::runtime_error(std::move(msg)), offset_(offset) {}
  long offset() const { return offset_; }

private:
  long offset_;
};

// Thrown when a numerical routine fails (eigensolver, diverged training).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

// Directional single-bond annotation (/ or \). Parsed and stored, no
// semantics downstream.
enum class BondStereo : std::uint8_t { None = 0, Up, Down };

// Tetrahedral tags (@ / @@). Parsed and stored, no semantics downstream.
enum class Chirality : std::uint8_t { None = 0, Ccw, Cw };

struct Atom {
  int index = 0;
  int element = 0;  // atomic number, >= 1
  int formal_charge = 0;
  bool aromatic = false;
  bool bracket = false;  // written as [...]
  std::optional<int> explicit_h;
  std::optional<int> isotope;
  Chirality chirality = Chirality::None;
  bool in_ring = false;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
  BondStereo stereo = BondStereo::None;
  bool in_ring = false;

  int other(int u) const { return u == a ? b : a; }
};

struct Molecule {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::string source;

  // Adjacency, neighbors in ascending atom order. adj_bonds[u][i] is the
  // index into `bonds` of the bond to adj[u][i].
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> adj_bonds;

  int num_atoms() const { return static_cast<int>(atoms.size()); }
  int num_bonds() const { return static_cast<int>(bonds.size()); }
  int degree(int u) const { return static_cast<int>(adj[u].size()); }

  // Index into `bonds` or -1.
  int bond_between(int u, int v) const;

  // Call after editing atoms/bonds by hand (tests do this).
  void rebuild_adjacency();
};

// Parses the supported SMILES subset: organic-subset atoms
// (B C N O P S F Cl Br I, aromatic b c n o p s), bracket atoms with
// isotope / chirality / H-count / charge, branches, ring closures
// (digit and %nn) and the bond symbols - = # : / \.
//
// Throws InputError with a byte offset on malformed input. Ring flags are
// computed before returning.
Molecule parse_smiles(std::string_view text);

// Hydrogen count of atom `u`: bracket atoms report their explicit H count
// (0 if absent); organic-subset atoms report default valence minus the
// bond-order sum, where an aromatic bond counts 1.5 and the summed total is
// rounded down. Clamped at 0.
int implicit_hydrogens(const Molecule& mol, int u);

// Recomputes in_ring for atoms and bonds: a bond is in a ring iff it is not
// a bridge, an atom iff it touches a ring bond.
void compute_ring_flags(Molecule& mol);

// Atomic number for an element symbol ("C", "Cl", ...), 0 if unknown.
int element_number(std::string_view symbol);
// Symbol for an atomic number, "?" if out of range.
const char* element_symbol(int z);

}  // namespace moltok

#endif  // MOLTOK_CHEM_HPP
