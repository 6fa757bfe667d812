//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/smarts.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace moltok {

namespace {

class SmartsParser {
public:
  SmartsParser(std::string_view text, SmartsDialect dialect)
      : text_(text), dialect_(dialect) {}

  SmartsPattern run() {
    parse_chain();
    finish();
    pat_.source = std::string(text_);
    build_adjacency();
    validate();
    return std::move(pat_);
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(msg + " in SMARTS '" + std::string(text_) + "' at byte " +
                         std::to_string(pos_),
                     static_cast<long>(pos_));
  }

  [[noreturn]] void unsupported(const std::string& token) const {
    throw InputError("unsupported primitive " + token + " in SMARTS '" +
                         std::string(text_) + "'",
                     static_cast<long>(pos_));
  }

  bool internal() const { return dialect_ == SmartsDialect::Internal; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool done() const { return pos_ >= text_.size(); }

  void parse_chain() {
    while (!done()) {
      const char c = peek();
      if (c == '(') {
        if (prev_ < 0) fail("branch with no preceding atom");
        stack_.push_back(prev_);
        ++pos_;
      } else if (c == ')') {
        if (stack_.empty()) fail("unbalanced parentheses");
        if (pending_set_) fail("dangling bond before ')'");
        prev_ = stack_.back();
        stack_.pop_back();
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '@' ||
                 c == '!' || c == ';') {
        // '#' opens an atomic-number primitive only inside brackets, so a
        // bare '#' here is the triple bond.
        parse_bond_expr();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
        ring_closure(c - '0');
      } else {
        parse_atom();
      }
    }
  }

  void parse_bond_expr() {
    if (pending_set_) fail("two bond expressions in a row");
    BondSpec spec;
    bool expect_prim = true;
    while (!done()) {
      char c = peek();
      if (c == ';') {
        ++pos_;
        expect_prim = true;
        continue;
      }
      bool neg = false;
      if (c == '!') {
        if (!internal()) unsupported("!");
        neg = true;
        ++pos_;
        c = peek();
      }
      if (c == '-' || c == '=' || c == '#' || c == ':' || c == '@') {
        if ((c == ':' || c == '@') && !internal()) unsupported(std::string(1, c));
        spec.prims.push_back({c, neg});
        ++pos_;
        expect_prim = false;
      } else {
        if (neg || expect_prim) fail("expected bond primitive");
        break;
      }
    }
    if (spec.prims.empty()) fail("empty bond expression");
    pending_ = spec;
    pending_set_ = true;
  }

  void parse_atom() {
    const char c = peek();
    AtomSpec spec;
    if (c == '*') {
      spec.wildcard = true;
      ++pos_;
    } else if (c == '[') {
      spec = parse_bracket();
    } else {
      spec.factors.push_back({parse_bare_element()});
    }
    add_atom(std::move(spec));
  }

  AtomPrim parse_bare_element() {
    const char c = peek();
    AtomPrim prim;
    prim.kind = AtomPrim::Kind::Element;
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      prim.value = 17;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      prim.value = 35;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': prim.value = 5; break;
        case 'C': prim.value = 6; break;
        case 'N': prim.value = 7; break;
        case 'O': prim.value = 8; break;
        case 'P': prim.value = 15; break;
        case 'S': prim.value = 16; break;
        case 'F': prim.value = 9; break;
        case 'I': prim.value = 53; break;
        case 'b': case 'c': case 'n': case 'o': case 'p': case 's': {
          if (!internal()) unsupported(std::string(1, c));
          prim.aromatic = 1;
          switch (c) {
            case 'b': prim.value = 5; break;
            case 'c': prim.value = 6; break;
            case 'n': prim.value = 7; break;
            case 'o': prim.value = 8; break;
            case 'p': prim.value = 15; break;
            case 's': prim.value = 16; break;
          }
          ++pos_;
          return prim;
        }
        default:
          unsupported(std::string(1, c));
      }
      ++pos_;
      prim.aromatic = 0;
      return prim;
    }
    prim.aromatic = 0;
    return prim;
  }

  AtomSpec parse_bracket() {
    ++pos_;  // '['
    AtomSpec spec;
    std::vector<AtomPrim> factor;
    bool closed = false;
    while (!done() && !closed) {
      const char c = peek();
      switch (c) {
        case ';':
          if (factor.empty()) fail("empty factor before ';'");
          spec.factors.push_back(std::move(factor));
          factor.clear();
          ++pos_;
          break;
        case ',':
          if (factor.empty()) fail("empty alternative before ','");
          ++pos_;
          break;
        case ']':
          if (factor.empty()) fail("empty bracket atom");
          spec.factors.push_back(std::move(factor));
          closed = true;
          ++pos_;
          break;
        default:
          factor.push_back(parse_bracket_prim());
      }
    }
    if (!closed) fail("unterminated bracket");
    return spec;
  }

  AtomPrim parse_bracket_prim() {
    AtomPrim prim;
    char c = peek();
    if (c == '!') {
      if (!internal()) unsupported("!");
      prim.negated = true;
      ++pos_;
      c = peek();
    }
    switch (c) {
      case '$': {
        if (!internal()) unsupported("$( (recursive SMARTS)");
        ++pos_;
        if (peek() != '(') fail("expected '(' after '$'");
        ++pos_;
        const std::size_t start = pos_;
        int depth = 1;
        while (!done() && depth > 0) {
          if (peek() == '(') ++depth;
          if (peek() == ')') --depth;
          ++pos_;
        }
        if (depth != 0) fail("unbalanced '$(' group");
        const std::string inner(text_.substr(start, pos_ - 1 - start));
        prim.kind = AtomPrim::Kind::Recursive;
        prim.sub = std::make_shared<SmartsPattern>(
            parse_smarts(inner, SmartsDialect::Internal));
        return prim;
      }
      case '#': {
        ++pos_;
        prim.kind = AtomPrim::Kind::Element;
        prim.aromatic = -1;
        prim.value = parse_int("atomic number");
        return prim;
      }
      case 'D': {
        ++pos_;
        prim.kind = AtomPrim::Kind::Degree;
        prim.value = parse_opt_digit(1);
        return prim;
      }
      case 'H': {
        ++pos_;
        prim.kind = AtomPrim::Kind::HCount;
        prim.value = parse_opt_digit(1);
        return prim;
      }
      case 'R': {
        ++pos_;
        prim.kind = AtomPrim::Kind::Ring;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          const int v = peek() - '0';
          ++pos_;
          if (v == 0) {
            prim.value = 0;
          } else if (internal()) {
            prim.value = 1;  // R1+ all mean "in a ring" for our graphs
          } else {
            unsupported("R" + std::to_string(v));
          }
        } else {
          if (!internal()) unsupported("R");
          prim.value = 1;
        }
        return prim;
      }
      case '+':
      case '-': {
        const int sign = c == '+' ? 1 : -1;
        ++pos_;
        int mag = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          mag = peek() - '0';
          ++pos_;
        } else {
          while (peek() == c) {
            ++mag;
            ++pos_;
          }
        }
        prim.kind = AtomPrim::Kind::Charge;
        prim.value = sign * mag;
        return prim;
      }
      case '*': {
        if (!internal()) unsupported("* inside brackets");
        ++pos_;
        // "anything": encode as a never-negated vacuous charge-free element
        // wildcard via an always-true Ring disjunction. Simpler: degree >= 0
        // is not expressible; use negated impossible element.
        prim.kind = AtomPrim::Kind::Element;
        prim.value = 0;  // no atom has Z=0
        prim.negated = !prim.negated;
        return prim;
      }
      default: {
        if (std::isupper(static_cast<unsigned char>(c))) {
          prim.kind = AtomPrim::Kind::Element;
          prim.aromatic = 0;
          std::string sym(1, c);
          if (pos_ + 1 < text_.size() &&
              std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
            const std::string two = sym + text_[pos_ + 1];
            if (element_number(two) != 0) sym = two;
          }
          const int z = element_number(sym);
          if (z == 0) unsupported(sym);
          prim.value = z;
          pos_ += sym.size();
          return prim;
        }
        if (c == 'a' || std::islower(static_cast<unsigned char>(c))) {
          if (!internal()) unsupported(std::string(1, c));
          switch (c) {
            case 'b': prim.value = 5; break;
            case 'c': prim.value = 6; break;
            case 'n': prim.value = 7; break;
            case 'o': prim.value = 8; break;
            case 'p': prim.value = 15; break;
            case 's': prim.value = 16; break;
            default: unsupported(std::string(1, c));
          }
          prim.kind = AtomPrim::Kind::Element;
          prim.aromatic = 1;
          ++pos_;
          return prim;
        }
        unsupported(std::string(1, c));
      }
    }
  }

  int parse_int(const char* what) {
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail(std::string("expected ") + what);
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      ++pos_;
    }
    return v;
  }

  int parse_opt_digit(int fallback) {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const int v = peek() - '0';
      ++pos_;
      return v;
    }
    return fallback;
  }

  void add_atom(AtomSpec spec) {
    const int idx = static_cast<int>(pat_.atoms.size());
    if (spec.wildcard && !internal() && idx != 0)
      fail("wildcard atom only allowed at position 0");
    pat_.atoms.push_back(std::move(spec));
    if (prev_ >= 0) {
      pat_.bonds.push_back({prev_, idx, take_pending()});
    } else if (pending_set_) {
      fail("bond with no preceding atom");
    }
    prev_ = idx;
  }

  BondSpec take_pending() {
    BondSpec s = pending_set_ ? pending_ : BondSpec{};
    pending_ = BondSpec{};
    pending_set_ = false;
    return s;
  }

  void ring_closure(int num) {
    if (prev_ < 0) fail("ring closure with no preceding atom");
    auto it = rings_.find(num);
    if (it == rings_.end()) {
      rings_[num] = {prev_, take_pending()};
      return;
    }
    auto [open_atom, open_spec] = it->second;
    rings_.erase(it);
    // An explicit spec on either side wins; specs always carry prims.
    BondSpec close = take_pending();
    BondSpec merged = !close.prims.empty() ? close : open_spec;
    pat_.bonds.push_back({open_atom, prev_, merged});
  }

  void finish() {
    if (pending_set_) fail("dangling bond at end of pattern");
    if (!stack_.empty()) fail("unbalanced parentheses");
    if (!rings_.empty()) fail("unmatched ring-closure digit");
    if (pat_.atoms.empty()) fail("empty pattern");
  }

  void build_adjacency() {
    pat_.adj.assign(pat_.atoms.size(), {});
    for (int i = 0; i < static_cast<int>(pat_.bonds.size()); ++i) {
      const PatternBond& b = pat_.bonds[i];
      pat_.adj[b.a].push_back({b.b, i});
      pat_.adj[b.b].push_back({b.a, i});
    }
    pat_.attachment = pat_.atoms[0].wildcard;
  }

  void validate() {
    // Connectivity: matching walks the pattern from atom 0.
    std::vector<bool> seen(pat_.atoms.size(), false);
    std::vector<int> todo{0};
    seen[0] = true;
    while (!todo.empty()) {
      const int u = todo.back();
      todo.pop_back();
      for (auto [v, bi] : pat_.adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          todo.push_back(v);
        }
      }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }))
      throw InputError("disconnected SMARTS pattern '" + pat_.source + "'");
    if (!internal()) {
      int wildcards = 0;
      for (const AtomSpec& a : pat_.atoms) wildcards += a.wildcard ? 1 : 0;
      if (wildcards > 1)
        throw InputError("more than one wildcard in '" + pat_.source + "'");
    }
  }

  std::string_view text_;
  SmartsDialect dialect_;
  std::size_t pos_ = 0;
  SmartsPattern pat_;
  int prev_ = -1;
  BondSpec pending_;
  bool pending_set_ = false;
  std::vector<int> stack_;
  std::map<int, std::pair<int, BondSpec>> rings_;
};

bool prim_matches(const AtomPrim& prim, const Molecule& mol, int u) {
  bool hit = false;
  const Atom& atom = mol.atoms[u];
  switch (prim.kind) {
    case AtomPrim::Kind::Element:
      hit = atom.element == prim.value &&
            (prim.aromatic < 0 || atom.aromatic == (prim.aromatic == 1));
      break;
    case AtomPrim::Kind::Degree:
      hit = mol.degree(u) == prim.value;
      break;
    case AtomPrim::Kind::HCount:
      hit = implicit_hydrogens(mol, u) == prim.value;
      break;
    case AtomPrim::Kind::Ring:
      hit = atom.in_ring == (prim.value == 1);
      break;
    case AtomPrim::Kind::Charge:
      hit = atom.formal_charge == prim.value;
      break;
    case AtomPrim::Kind::Recursive:
      hit = match_rooted(mol, *prim.sub, u);
      break;
  }
  return prim.negated ? !hit : hit;
}

// Backtracking monomorphism search over the pattern's DFS order.
class Matcher {
public:
  Matcher(const Molecule& mol, const SmartsPattern& pat, int pinned_root,
          bool first_only)
      : mol_(mol), pat_(pat), pinned_(pinned_root), first_only_(first_only) {
    order_ = search_order();
    assign_.assign(pat_.num_atoms(), -1);
    used_.assign(mol_.num_atoms(), false);
  }

  std::vector<std::vector<int>> run() {
    extend(0);
    return std::move(results_);
  }

  bool found_any() const { return found_; }

private:
  // DFS order rooted at pattern atom 0; every later atom has an anchor
  // neighbor already placed.
  std::vector<int> search_order() const {
    std::vector<int> order;
    std::vector<bool> seen(pat_.num_atoms(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (auto [v, bi] : pat_.adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return order;
  }

  bool atom_ok(int pa, int ma) const {
    const AtomSpec& spec = pat_.atoms[pa];
    if (spec.wildcard) return true;
    for (const auto& factor : spec.factors) {
      bool any = false;
      for (const AtomPrim& prim : factor) {
        if (prim_matches(prim, mol_, ma)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  bool bonds_ok(int pa, int ma) const {
    for (auto [pv, pbi] : pat_.adj[pa]) {
      const int mv = assign_[pv];
      if (mv < 0) continue;
      const int mbi = mol_.bond_between(ma, mv);
      if (mbi < 0) return false;
      if (!pat_.bonds[pbi].spec.matches(mol_.bonds[mbi])) return false;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (stop_) return;
    if (depth == order_.size()) {
      record();
      return;
    }
    const int pa = order_[depth];
    if (depth == 0) {
      if (pinned_ >= 0) {
        try_atom(pa, pinned_, depth);
        return;
      }
      for (int ma = 0; ma < mol_.num_atoms() && !stop_; ++ma)
        try_atom(pa, ma, depth);
      return;
    }
    // Anchor on an already-placed pattern neighbor; candidates are the
    // anchor image's neighbors, ascending.
    int anchor = -1;
    for (auto [pv, pbi] : pat_.adj[pa]) {
      if (assign_[pv] >= 0) {
        anchor = assign_[pv];
        break;
      }
    }
    if (anchor < 0) return;  // unreachable for connected patterns
    for (const int ma : mol_.adj[anchor]) {
      if (stop_) break;
      try_atom(pa, ma, depth);
    }
  }

  void try_atom(int pa, int ma, std::size_t depth) {
    if (used_[ma]) return;
    if (!atom_ok(pa, ma)) return;
    if (!bonds_ok(pa, ma)) return;
    assign_[pa] = ma;
    used_[ma] = true;
    extend(depth + 1);
    used_[ma] = false;
    assign_[pa] = -1;
  }

  void record() {
    found_ = true;
    if (first_only_) {
      stop_ = true;
      return;
    }
    std::vector<int> key;
    key.reserve(pat_.num_atoms());
    for (int pa = 0; pa < pat_.num_atoms(); ++pa)
      if (!pat_.atoms[pa].wildcard) key.push_back(assign_[pa]);
    std::sort(key.begin(), key.end());
    if (seen_sets_.insert(key).second) results_.push_back(assign_);
  }

  const Molecule& mol_;
  const SmartsPattern& pat_;
  int pinned_;
  bool first_only_;
  std::vector<int> order_;
  std::vector<int> assign_;
  std::vector<bool> used_;
  std::set<std::vector<int>> seen_sets_;
  std::vector<std::vector<int>> results_;
  bool found_ = false;
  bool stop_ = false;
};

}  // namespace

bool AtomSpec::matches(const Molecule& mol, int u) const {
  if (wildcard) return true;
  for (const auto& factor : factors) {
    bool any = false;
    for (const AtomPrim& prim : factor) {
      if (prim_matches(prim, mol, u)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

bool BondSpec::matches(const Bond& b) const {
  if (prims.empty())
    return b.order == BondOrder::Single || b.order == BondOrder::Aromatic;
  for (const Prim& p : prims) {
    bool hit = false;
    switch (p.code) {
      case '-': hit = b.order == BondOrder::Single; break;
      case '=': hit = b.order == BondOrder::Double; break;
      case '#': hit = b.order == BondOrder::Triple; break;
      case ':': hit = b.order == BondOrder::Aromatic; break;
      case '@': hit = b.in_ring; break;
    }
    if (p.negated) hit = !hit;
    if (!hit) return false;
  }
  return true;
}

SmartsPattern parse_smarts(std::string_view text, SmartsDialect dialect) {
  return SmartsParser(text, dialect).run();
}

std::vector<std::vector<int>> find_matches(const Molecule& mol,
                                           const SmartsPattern& pattern) {
  return Matcher(mol, pattern, -1, false).run();
}

bool match_rooted(const Molecule& mol, const SmartsPattern& pattern, int root) {
  Matcher m(mol, pattern, root, true);
  m.run();
  return m.found_any();
}

std::vector<int> detect_group_counts(const Molecule& mol,
                                     const FunctionalGroupRegistry& registry) {
  std::vector<int> counts;
  counts.reserve(registry.size());
  for (const FunctionalGroup& fg : registry.entries())
    counts.push_back(static_cast<int>(find_matches(mol, fg.pattern).size()));
  return counts;
}

std::vector<std::pair<std::string, int>> detect_functional_groups(
    const Molecule& mol, const FunctionalGroupRegistry& registry) {
  const std::vector<int> counts = detect_group_counts(mol, registry);
  std::vector<std::pair<std::string, int>> out;
  for (int i = 0; i < registry.size(); ++i) {
    if (counts[i] == 0) continue;
    const std::string& name = registry.entries()[i].name;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == name; });
    if (it == out.end())
      out.emplace_back(name, counts[i]);
    else
      it->second += counts[i];
  }
  return out;
}

}  // namespace moltok
