//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/chem.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace moltok {

namespace {

constexpr const char* kSymbols[] = {
    "?",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

constexpr int kNumSymbols = static_cast<int>(std::size(kSymbols));

struct PendingBond {
  bool present = false;
  BondOrder order = BondOrder::Single;
  bool explicit_order = false;  // one of - = # : was written
  BondStereo stereo = BondStereo::None;
  long offset = -1;
};

struct RingSlot {
  int atom = -1;
  PendingBond bond;
  long offset = -1;
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text) : text_(text) {}

  Molecule run() {
    while (pos_ < text_.size()) step();
    finish();
    mol_.source = std::string(text_);
    mol_.rebuild_adjacency();
    check_valence();
    compute_ring_flags(mol_);
    return std::move(mol_);
  }

private:
  [[noreturn]] void fail(const std::string& msg, long offset) const {
    throw InputError(msg + " at byte " + std::to_string(offset), offset);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void step() {
    const char c = text_[pos_];
    const long here = static_cast<long>(pos_);
    switch (c) {
      case '(':
        if (pending_.present) fail("bond symbol before '('", here);
        if (prev_ < 0) fail("branch with no preceding atom", here);
        stack_.push_back(prev_);
        ++pos_;
        return;
      case ')':
        if (pending_.present) fail("dangling bond before ')'", here);
        if (stack_.empty()) fail("unbalanced parentheses", here);
        prev_ = stack_.back();
        stack_.pop_back();
        ++pos_;
        return;
      case '-': set_bond(BondOrder::Single, here); return;
      case '=': set_bond(BondOrder::Double, here); return;
      case '#': set_bond(BondOrder::Triple, here); return;
      case ':': set_bond(BondOrder::Aromatic, here); return;
      case '/': set_stereo(BondStereo::Up, here); return;
      case '\\': set_stereo(BondStereo::Down, here); return;
      case '%': {
        if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
          fail("'%' needs two digits", here);
        const int num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        pos_ += 3;
        ring_closure(num, here);
        return;
      }
      case '.':
        fail("dot-disconnected SMILES is not supported", here);
      case '[':
        bracket_atom();
        return;
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) {
          ++pos_;
          ring_closure(c - '0', here);
          return;
        }
        organic_atom();
        return;
    }
  }

  void set_bond(BondOrder order, long here) {
    if (pending_.present) fail("two consecutive bond symbols", here);
    pending_.present = true;
    pending_.order = order;
    pending_.explicit_order = true;
    pending_.offset = here;
    ++pos_;
  }

  void set_stereo(BondStereo s, long here) {
    if (pending_.present) fail("two consecutive bond symbols", here);
    pending_.present = true;
    pending_.order = BondOrder::Single;
    pending_.explicit_order = true;
    pending_.stereo = s;
    pending_.offset = here;
    ++pos_;
  }

  void organic_atom() {
    const long here = static_cast<long>(pos_);
    const char c = text_[pos_];
    Atom atom;
    // Two-letter symbols first.
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      atom.element = 17;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      atom.element = 35;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': atom.element = 5; break;
        case 'C': atom.element = 6; break;
        case 'N': atom.element = 7; break;
        case 'O': atom.element = 8; break;
        case 'P': atom.element = 15; break;
        case 'S': atom.element = 16; break;
        case 'F': atom.element = 9; break;
        case 'I': atom.element = 53; break;
        case 'b': atom.element = 5; atom.aromatic = true; break;
        case 'c': atom.element = 6; atom.aromatic = true; break;
        case 'n': atom.element = 7; atom.aromatic = true; break;
        case 'o': atom.element = 8; atom.aromatic = true; break;
        case 'p': atom.element = 15; atom.aromatic = true; break;
        case 's': atom.element = 16; atom.aromatic = true; break;
        default:
          fail(std::string("unknown element token '") + c + "'", here);
      }
      ++pos_;
    }
    add_atom(atom, here);
  }

  void bracket_atom() {
    const long start = static_cast<long>(pos_);
    ++pos_;  // '['
    Atom atom;
    atom.bracket = true;

    // Isotope.
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      int iso = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        iso = iso * 10 + (peek() - '0');
        if (iso > 999) fail("isotope out of range", start);
        ++pos_;
      }
      atom.isotope = iso;
    }

    // Element symbol. Aromatic lowercase first, then longest symbol match.
    const long sym_at = static_cast<long>(pos_);
    const char c = peek();
    if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's') {
      atom.aromatic = true;
      switch (c) {
        case 'b': atom.element = 5; break;
        case 'c': atom.element = 6; break;
        case 'n': atom.element = 7; break;
        case 'o': atom.element = 8; break;
        case 'p': atom.element = 15; break;
        case 's': atom.element = 16; break;
      }
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::string sym(1, c);
      if (pos_ + 1 < text_.size() &&
          std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        std::string two = sym + text_[pos_ + 1];
        if (element_number(two) != 0) sym = two;
      }
      const int z = element_number(sym);
      if (z == 0) fail("unknown element token '" + sym + "'", sym_at);
      atom.element = z;
      pos_ += sym.size();
    } else {
      fail(std::string("unknown element token '") + c + "'", sym_at);
    }

    // Tags in any reasonable order: chirality, H count, charge.
    bool closed = false;
    while (pos_ < text_.size() && !closed) {
      const char t = text_[pos_];
      const long here = static_cast<long>(pos_);
      switch (t) {
        case '@':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '@') {
            atom.chirality = Chirality::Cw;
            pos_ += 2;
          } else {
            atom.chirality = Chirality::Ccw;
            ++pos_;
          }
          break;
        case 'H': {
          ++pos_;
          int h = 1;
          if (std::isdigit(static_cast<unsigned char>(peek()))) {
            h = peek() - '0';
            ++pos_;
          }
          atom.explicit_h = h;
          break;
        }
        case '+':
        case '-': {
          const int sign = t == '+' ? 1 : -1;
          ++pos_;
          int mag = 1;
          if (std::isdigit(static_cast<unsigned char>(peek()))) {
            mag = peek() - '0';
            ++pos_;
          } else {
            while (peek() == t) {  // ++ / -- style
              ++mag;
              ++pos_;
            }
          }
          atom.formal_charge = sign * mag;
          break;
        }
        case ']':
          closed = true;
          ++pos_;
          break;
        default:
          fail(std::string("unexpected token '") + t + "' in bracket atom", here);
      }
    }
    if (!closed) fail("unterminated bracket atom", start);
    add_atom(atom, start);
  }

  void add_atom(Atom atom, long here) {
    atom.index = mol_.num_atoms();
    mol_.atoms.push_back(atom);
    if (prev_ >= 0) {
      make_bond(prev_, atom.index, take_pending(), here);
    } else if (pending_.present) {
      fail("bond with no preceding atom", pending_.offset);
    }
    prev_ = atom.index;
    atom_offset_.push_back(here);
  }

  PendingBond take_pending() {
    PendingBond p = pending_;
    pending_ = PendingBond{};
    return p;
  }

  void make_bond(int u, int v, const PendingBond& p, long here) {
    if (u == v) fail("ring closure bonds an atom to itself", here);
    for (const Bond& b : mol_.bonds)
      if ((b.a == u && b.b == v) || (b.a == v && b.b == u))
        fail("duplicate bond", here);
    Bond bond;
    bond.a = u;
    bond.b = v;
    bond.stereo = p.stereo;
    if (p.explicit_order) {
      bond.order = p.order;
    } else {
      bond.order = (mol_.atoms[u].aromatic && mol_.atoms[v].aromatic)
                       ? BondOrder::Aromatic
                       : BondOrder::Single;
    }
    mol_.bonds.push_back(bond);
  }

  void ring_closure(int num, long here) {
    if (prev_ < 0) fail("ring closure with no preceding atom", here);
    auto it = rings_.find(num);
    if (it == rings_.end() || it->second.atom < 0) {
      RingSlot slot;
      slot.atom = prev_;
      slot.bond = take_pending();
      slot.offset = here;
      rings_[num] = slot;
      return;
    }
    RingSlot slot = it->second;
    rings_.erase(it);
    PendingBond close = take_pending();
    PendingBond merged;
    if (slot.bond.explicit_order && close.explicit_order) {
      if (slot.bond.order != close.order)
        fail("conflicting ring-closure bond orders", here);
      merged = close;
    } else if (slot.bond.explicit_order) {
      merged = slot.bond;
    } else if (close.explicit_order) {
      merged = close;
    }
    merged.present = true;
    make_bond(slot.atom, prev_, merged, here);
  }

  void finish() {
    if (pending_.present) fail("dangling bond at end of input", pending_.offset);
    if (!stack_.empty()) fail("unbalanced parentheses", static_cast<long>(text_.size()));
    if (!rings_.empty()) {
      long off = text_.size();
      for (const auto& [num, slot] : rings_) off = std::min(off, slot.offset);
      fail("unmatched ring-closure digit", off);
    }
    if (mol_.atoms.empty()) fail("empty SMILES", 0);
  }

  void check_valence() {
    for (const Atom& a : mol_.atoms) {
      if (!a.bracket) continue;
      const int h = a.explicit_h.value_or(0);
      if (h + mol_.degree(a.index) > 8)
        fail("valence-impossible bracket atom", atom_offset_[a.index]);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Molecule mol_;
  int prev_ = -1;
  PendingBond pending_;
  std::vector<int> stack_;
  std::map<int, RingSlot> rings_;
  std::vector<long> atom_offset_;
};

}  // namespace

int Molecule::bond_between(int u, int v) const {
  for (std::size_t i = 0; i < adj[u].size(); ++i)
    if (adj[u][i] == v) return adj_bonds[u][i];
  return -1;
}

void Molecule::rebuild_adjacency() {
  adj.assign(atoms.size(), {});
  adj_bonds.assign(atoms.size(), {});
  for (int i = 0; i < num_bonds(); ++i) {
    const Bond& b = bonds[i];
    if (b.a < 0 || b.b < 0 || b.a >= num_atoms() || b.b >= num_atoms())
      throw InputError("bond endpoint out of range");
    adj[b.a].push_back(b.b);
    adj_bonds[b.a].push_back(i);
    adj[b.b].push_back(b.a);
    adj_bonds[b.b].push_back(i);
  }
  for (int u = 0; u < num_atoms(); ++u) {
    // Keep neighbor lists ascending, bond list in step.
    std::vector<int> order(adj[u].size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return adj[u][x] < adj[u][y]; });
    std::vector<int> na(order.size()), nb(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      na[i] = adj[u][order[i]];
      nb[i] = adj_bonds[u][order[i]];
    }
    adj[u] = std::move(na);
    adj_bonds[u] = std::move(nb);
  }
}

Molecule parse_smiles(std::string_view text) { return SmilesParser(text).run(); }

int implicit_hydrogens(const Molecule& mol, int u) {
  const Atom& a = mol.atoms.at(u);
  if (a.bracket) return a.explicit_h.value_or(0);
  int default_valence = 0;
  switch (a.element) {
    case 5: default_valence = 3; break;   // B
    case 6: default_valence = 4; break;   // C
    case 7: default_valence = 3; break;   // N
    case 8: default_valence = 2; break;   // O
    case 15: default_valence = 3; break;  // P
    case 16: default_valence = 2; break;  // S
    case 9:
    case 17:
    case 35:
    case 53: default_valence = 1; break;  // halogens
    default: return 0;
  }
  double sum = 0.0;
  for (int bi : mol.adj_bonds[u]) {
    switch (mol.bonds[bi].order) {
      case BondOrder::Single: sum += 1.0; break;
      case BondOrder::Double: sum += 2.0; break;
      case BondOrder::Triple: sum += 3.0; break;
      case BondOrder::Aromatic: sum += 1.5; break;
    }
  }
  const int used = static_cast<int>(sum);  // round the total down
  return std::max(0, default_valence - used);
}

void compute_ring_flags(Molecule& mol) {
  const int n = mol.num_atoms();
  for (Atom& a : mol.atoms) a.in_ring = false;
  for (Bond& b : mol.bonds) b.in_ring = true;  // bridges cleared below

  // Iterative DFS bridge finding (Tarjan low-link).
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  struct Frame {
    int u;
    int parent_bond;
    std::size_t next;
  };
  for (int start = 0; start < n; ++start) {
    if (disc[start] >= 0) continue;
    std::vector<Frame> st;
    st.push_back({start, -1, 0});
    disc[start] = low[start] = timer++;
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.next < mol.adj[f.u].size()) {
        const int v = mol.adj[f.u][f.next];
        const int bi = mol.adj_bonds[f.u][f.next];
        ++f.next;
        if (bi == f.parent_bond) continue;
        if (disc[v] >= 0) {
          low[f.u] = std::min(low[f.u], disc[v]);
        } else {
          disc[v] = low[v] = timer++;
          st.push_back({v, bi, 0});
        }
      } else {
        const int u = f.u;
        const int pb = f.parent_bond;
        st.pop_back();
        if (!st.empty()) {
          const int p = st.back().u;
          low[p] = std::min(low[p], low[u]);
          if (low[u] > disc[p]) mol.bonds[pb].in_ring = false;  // bridge
        }
      }
    }
  }
  for (const Bond& b : mol.bonds) {
    if (b.in_ring) {
      mol.atoms[b.a].in_ring = true;
      mol.atoms[b.b].in_ring = true;
    }
  }
}

int element_number(std::string_view symbol) {
  for (int z = 1; z < kNumSymbols; ++z)
    if (symbol == kSymbols[z]) return z;
  return 0;
}

const char* element_symbol(int z) {
  if (z < 1 || z >= kNumSymbols) return "?";
  return kSymbols[z];
}

}  // namespace moltok
