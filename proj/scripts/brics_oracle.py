#!/usr/bin/env python3
# Project moltok - Copyright 2026 The moltok Authors.
# SPDX-License-Identifier: Apache-2.0
"""Reference oracle for retrosynthetic (BRICS) bond finding and fragmentation.

Independent of the C++ implementation: its own SMILES parser and the 16 link
environments written as direct graph predicates rather than compiled SMARTS.
Generates the frozen fixtures consumed by the C++ test suite:

    python3 scripts/brics_oracle.py tests/fixtures/corpus.smi \
        > tests/fixtures/brics_fixtures.json

Two documented reference behaviors of the rule table act as canaries and are
asserted on every run:
  * C1CCCCC1NC(=O)C fragments into cyclohexyl / lone N / acetyl
  * CCCOCCC(=O)c1ccccc1 yields a lone ether oxygen fragment
"""

import json
import sys

SINGLE, DOUBLE, TRIPLE, AROMATIC = 1, 2, 3, 4

ORGANIC = {
    "B": 5, "C": 6, "N": 7, "O": 8, "P": 15, "S": 16,
    "F": 9, "Cl": 17, "Br": 35, "I": 53,
}
AROMATIC_ORGANIC = {"b": 5, "c": 6, "n": 7, "o": 8, "p": 15, "s": 16}
SYMBOLS = {
    "H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8,
    "F": 9, "Na": 11, "Mg": 12, "Al": 13, "Si": 14, "P": 15, "S": 16,
    "Cl": 17, "K": 19, "Ca": 20, "As": 33, "Se": 34, "Br": 35, "I": 53,
}


class Atom:
    __slots__ = ("elem", "charge", "aromatic", "bracket", "hcount")

    def __init__(self, elem, aromatic=False, bracket=False):
        self.elem = elem
        self.aromatic = aromatic
        self.bracket = bracket
        self.charge = 0
        self.hcount = None


class Mol:
    def __init__(self):
        self.atoms = []
        self.bonds = []  # (a, b, order)
        self.adj = []

    def add_atom(self, atom):
        self.atoms.append(atom)
        self.adj.append([])
        return len(self.atoms) - 1

    def add_bond(self, a, b, order):
        if a == b:
            raise ValueError("self bond")
        bi = len(self.bonds)
        self.bonds.append((a, b, order))
        self.adj[a].append((b, bi))
        self.adj[b].append((a, bi))

    def degree(self, u):
        return len(self.adj[u])

    def bond_order(self, u, v):
        for w, bi in self.adj[u]:
            if w == v:
                return self.bonds[bi][2]
        return 0

    def ring_bonds(self):
        """Bond indices on a cycle: endpoints reconnect without the bond."""
        out = set()
        for bi, (a, b, _o) in enumerate(self.bonds):
            seen = {a}
            todo = [a]
            while todo:
                u = todo.pop()
                for v, vb in self.adj[u]:
                    if vb == bi or v in seen:
                        continue
                    seen.add(v)
                    todo.append(v)
            if b in seen:
                out.add(bi)
        return out


def parse_smiles(text):
    mol = Mol()
    prev = -1
    stack = []
    pending = None  # bond order or None
    rings = {}
    i = 0
    n = len(text)

    def make_bond(a, b, forced):
        if forced is not None:
            order = forced
        elif mol.atoms[a].aromatic and mol.atoms[b].aromatic:
            order = AROMATIC
        else:
            order = SINGLE
        mol.add_bond(a, b, order)

    while i < n:
        c = text[i]
        if c == "(":
            stack.append(prev)
            i += 1
        elif c == ")":
            prev = stack.pop()
            i += 1
        elif c in "-=#:":
            pending = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}[c]
            i += 1
        elif c in "/\\":
            pending = SINGLE
            i += 1
        elif c.isdigit() or c == "%":
            if c == "%":
                num = int(text[i + 1:i + 3])
                i += 3
            else:
                num = int(c)
                i += 1
            if num in rings:
                a, forced = rings.pop(num)
                make_bond(a, prev, forced if forced is not None else pending)
            else:
                rings[num] = (prev, pending)
            pending = None
        elif c == "[":
            j = text.index("]", i)
            body = text[i + 1:j]
            k = 0
            while k < len(body) and body[k].isdigit():
                k += 1
            body = body[k:]
            aromatic = False
            if body[:2] in SYMBOLS and body[:2] not in ("Hs",):
                elem = SYMBOLS[body[:2]]
                body = body[2:]
            elif body[0] in AROMATIC_ORGANIC:
                elem = AROMATIC_ORGANIC[body[0]]
                aromatic = True
                body = body[1:]
            else:
                elem = SYMBOLS[body[0]]
                body = body[1:]
            atom = Atom(elem, aromatic, bracket=True)
            atom.hcount = 0
            k = 0
            while k < len(body):
                t = body[k]
                if t == "@":
                    k += 1
                elif t == "H":
                    k += 1
                    if k < len(body) and body[k].isdigit():
                        atom.hcount = int(body[k])
                        k += 1
                    else:
                        atom.hcount = 1
                elif t in "+-":
                    sign = 1 if t == "+" else -1
                    k += 1
                    if k < len(body) and body[k].isdigit():
                        atom.charge = sign * int(body[k])
                        k += 1
                    else:
                        atom.charge = sign
                        while k < len(body) and body[k] == t:
                            atom.charge += sign
                            k += 1
                else:
                    raise ValueError(f"bracket token {t!r} in {text!r}")
            idx = mol.add_atom(atom)
            if prev >= 0:
                make_bond(prev, idx, pending)
            pending = None
            prev = idx
            i = j + 1
        else:
            if text[i:i + 2] in ("Cl", "Br"):
                atom = Atom(ORGANIC[text[i:i + 2]])
                i += 2
            elif c in ORGANIC:
                atom = Atom(ORGANIC[c])
                i += 1
            elif c in AROMATIC_ORGANIC:
                atom = Atom(AROMATIC_ORGANIC[c], aromatic=True)
                i += 1
            else:
                raise ValueError(f"unexpected {c!r} in {text!r}")
            idx = mol.add_atom(atom)
            if prev >= 0:
                make_bond(prev, idx, pending)
            pending = None
            prev = idx
    if rings:
        raise ValueError(f"unclosed rings in {text!r}")
    return mol


# ---------------------------------------------------------------------------
# Link environments, written out as graph predicates. `rb` is the set of
# ring bond indices.

def _nbrs(mol, u):
    return mol.adj[u]


def env_L1(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic or mol.degree(u) != 3:
        return False
    for v, vb in _nbrs(mol, u):
        if mol.bonds[vb][2] in (SINGLE, AROMATIC) and mol.atoms[v].elem in (6, 7, 8):
            for w, wb in _nbrs(mol, u):
                if w == v:
                    continue
                if (mol.bonds[wb][2] == DOUBLE and mol.atoms[w].elem == 8
                        and not mol.atoms[w].aromatic):
                    return True
    return False


def env_L3(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 8 or a.aromatic or mol.degree(u) != 2:
        return False
    return any(mol.bonds[vb][2] == SINGLE and vb not in rb and mol.atoms[v].elem == 6
               for v, vb in _nbrs(mol, u))


def _has_double(mol, u):
    return any(mol.bonds[vb][2] == DOUBLE for _v, vb in _nbrs(mol, u))


def env_L4(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic or mol.degree(u) == 1 or _has_double(mol, u):
        return False
    return any(mol.bonds[vb][2] == SINGLE and vb not in rb and mol.atoms[v].elem == 6
               for v, vb in _nbrs(mol, u))


def env_L5(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 7 or a.aromatic or mol.degree(u) == 1 or _has_double(mol, u):
        return False
    # No single bond to anything that is neither carbon nor sulfur.
    for v, vb in _nbrs(mol, u):
        if mol.bonds[vb][2] == SINGLE and mol.atoms[v].elem not in (6, 16):
            return False
    # Not a lactam-style nitrogen: ring bond to an in-ring carbonyl carbon.
    in_ring = any(vb in rb for _v, vb in _nbrs(mol, u))
    if in_ring:
        for v, vb in _nbrs(mol, u):
            if vb not in rb or mol.atoms[v].elem != 6 or mol.atoms[v].aromatic:
                continue
            v_in_ring = any(wb in rb for _w, wb in _nbrs(mol, v))
            if not v_in_ring:
                continue
            for w, wb in _nbrs(mol, v):
                if w == u:
                    continue
                if (mol.bonds[wb][2] == DOUBLE and mol.atoms[w].elem == 8
                        and not mol.atoms[w].aromatic):
                    return False
    return True


def env_L6(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic or mol.degree(u) != 3:
        return False
    if any(vb in rb for _v, vb in _nbrs(mol, u)):
        return False
    for v, vb in _nbrs(mol, u):
        if (mol.bonds[vb][2] == DOUBLE and mol.atoms[v].elem == 8
                and not mol.atoms[v].aromatic):
            for w, wb in _nbrs(mol, u):
                if w == v:
                    continue
                if (mol.bonds[wb][2] == SINGLE and wb not in rb
                        and mol.atoms[w].elem in (6, 7, 8)):
                    return True
    return False


def env_L7(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic or mol.degree(u) not in (2, 3):
        return False
    return any(mol.bonds[vb][2] == SINGLE and mol.atoms[v].elem == 6
               for v, vb in _nbrs(mol, u))


def env_L8(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic or mol.degree(u) == 1:
        return False
    if any(vb in rb for _v, vb in _nbrs(mol, u)):
        return False
    return all(mol.bonds[vb][2] == SINGLE for _v, vb in _nbrs(mol, u))


def env_L9(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 7 or not a.aromatic or a.charge != 0:
        return False
    ar = [v for v, vb in _nbrs(mol, u)
          if mol.bonds[vb][2] == AROMATIC and mol.atoms[v].aromatic
          and mol.atoms[v].elem in (6, 7, 8, 16)]
    return len(set(ar)) >= 2


def env_L10(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 7 or a.aromatic:
        return False
    if not any(vb in rb for _v, vb in _nbrs(mol, u)):
        return False
    carbonyl = None
    for v, vb in _nbrs(mol, u):
        if vb not in rb or mol.atoms[v].elem != 6 or mol.atoms[v].aromatic:
            continue
        for w, wb in _nbrs(mol, v):
            if w == u:
                continue
            if (mol.bonds[wb][2] == DOUBLE and mol.atoms[w].elem == 8
                    and not mol.atoms[w].aromatic):
                carbonyl = v
                break
        if carbonyl is not None:
            break
    if carbonyl is None:
        return False
    for v, vb in _nbrs(mol, u):
        if v == carbonyl:
            continue
        if vb in rb and not mol.atoms[v].aromatic and mol.atoms[v].elem in (6, 7, 8, 16):
            return True
    return False


def env_L11(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 16 or a.aromatic or mol.degree(u) != 2:
        return False
    return any(mol.bonds[vb][2] == SINGLE and vb not in rb and mol.atoms[v].elem == 6
               for v, vb in _nbrs(mol, u))


def env_L12(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 16 or a.aromatic or mol.degree(u) != 4:
        return False
    carbons = [v for v, vb in _nbrs(mol, u)
               if mol.bonds[vb][2] in (SINGLE, AROMATIC) and mol.atoms[v].elem == 6]
    oxys = [v for v, vb in _nbrs(mol, u)
            if mol.bonds[vb][2] == DOUBLE and mol.atoms[v].elem == 8
            and not mol.atoms[v].aromatic]
    return len(carbons) >= 1 and len(set(oxys)) >= 2


def env_L13(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic:
        return False
    first = [v for v, vb in _nbrs(mol, u)
             if vb in rb and mol.bonds[vb][2] == SINGLE
             and not mol.atoms[v].aromatic and mol.atoms[v].elem in (6, 7, 8, 16)]
    second = [v for v, vb in _nbrs(mol, u)
              if vb in rb and mol.bonds[vb][2] == SINGLE
              and not mol.atoms[v].aromatic and mol.atoms[v].elem in (7, 8, 16)]
    for x in first:
        for y in second:
            if x != y:
                return True
    return False


def env_L14(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or not a.aromatic:
        return False
    first = [v for v, vb in _nbrs(mol, u)
             if mol.bonds[vb][2] == AROMATIC and mol.atoms[v].aromatic
             and mol.atoms[v].elem in (6, 7, 8, 16)]
    second = [v for v, vb in _nbrs(mol, u)
              if mol.bonds[vb][2] == AROMATIC and mol.atoms[v].aromatic
              and mol.atoms[v].elem in (7, 8, 16)]
    for x in first:
        for y in second:
            if x != y:
                return True
    return False


def env_L15(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or a.aromatic:
        return False
    ring_c = [v for v, vb in _nbrs(mol, u)
              if vb in rb and mol.bonds[vb][2] == SINGLE
              and not mol.atoms[v].aromatic and mol.atoms[v].elem == 6]
    return len(set(ring_c)) >= 2


def env_L16(mol, u, rb):
    a = mol.atoms[u]
    if a.elem != 6 or not a.aromatic:
        return False
    ar_c = [v for v, vb in _nbrs(mol, u)
            if mol.bonds[vb][2] == AROMATIC and mol.atoms[v].aromatic
            and mol.atoms[v].elem == 6]
    return len(set(ar_c)) >= 2


ENVS = {
    1: env_L1, 3: env_L3, 4: env_L4, 5: env_L5, 6: env_L6, 7: env_L7,
    8: env_L8, 9: env_L9, 10: env_L10, 11: env_L11, 12: env_L12,
    13: env_L13, 14: env_L14, 15: env_L15, 16: env_L16,
}

# (envA, envB, bond order) link rules.
RULES = [
    (1, 3, SINGLE), (1, 5, SINGLE), (1, 10, SINGLE),
    (3, 4, SINGLE), (3, 13, SINGLE), (3, 14, SINGLE), (3, 15, SINGLE), (3, 16, SINGLE),
    (4, 5, SINGLE), (4, 11, SINGLE),
    (5, 12, SINGLE), (5, 14, SINGLE), (5, 16, SINGLE), (5, 13, SINGLE), (5, 15, SINGLE),
    (6, 13, SINGLE), (6, 14, SINGLE), (6, 15, SINGLE), (6, 16, SINGLE),
    (7, 7, DOUBLE),
    (8, 9, SINGLE), (8, 10, SINGLE), (8, 13, SINGLE), (8, 14, SINGLE),
    (8, 15, SINGLE), (8, 16, SINGLE),
    (9, 13, SINGLE), (9, 14, SINGLE), (9, 15, SINGLE), (9, 16, SINGLE),
    (10, 13, SINGLE), (10, 14, SINGLE), (10, 15, SINGLE), (10, 16, SINGLE),
    (11, 13, SINGLE), (11, 14, SINGLE), (11, 15, SINGLE), (11, 16, SINGLE),
    (12, 13, SINGLE), (12, 14, SINGLE), (12, 15, SINGLE), (12, 16, SINGLE),
    (13, 14, SINGLE), (13, 15, SINGLE), (13, 16, SINGLE),
    (14, 14, SINGLE), (14, 15, SINGLE), (14, 16, SINGLE),
    (15, 16, SINGLE),
    (16, 16, SINGLE),
]


def cleavable_bonds(mol):
    rb = mol.ring_bonds()
    env_cache = {}

    def env(num, u):
        key = (num, u)
        if key not in env_cache:
            env_cache[key] = ENVS[num](mol, u, rb)
        return env_cache[key]

    out = []
    for bi, (a, b, order) in enumerate(mol.bonds):
        if bi in rb:
            continue
        hit = False
        for ea, eb, etype in RULES:
            if order != etype:
                continue
            if (env(ea, a) and env(eb, b)) or (env(ea, b) and env(eb, a)):
                hit = True
                break
        if hit:
            out.append(tuple(sorted((a, b))))
    return sorted(out)


def fragments(mol, cleaved):
    cut = set(cleaved)
    n = len(mol.atoms)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        todo = [s]
        seen[s] = True
        while todo:
            u = todo.pop()
            comp.append(u)
            for v, vb in mol.adj[u]:
                a, b, _o = mol.bonds[vb]
                if tuple(sorted((a, b))) in cut:
                    continue
                if not seen[v]:
                    seen[v] = True
                    todo.append(v)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def ring_bond_pairs(mol):
    rb = mol.ring_bonds()
    return sorted(tuple(sorted((mol.bonds[bi][0], mol.bonds[bi][1]))) for bi in rb)


def run_canaries():
    # Documented behavior: both N-C bonds of the acetamide cut, lone N motif.
    m = parse_smiles("C1CCCCC1NC(=O)C")
    cb = cleavable_bonds(m)
    fr = fragments(m, cb)
    sizes = sorted(len(f) for f in fr)
    assert sizes == [1, 3, 6], f"amide canary failed: {fr}"
    # Documented behavior: ether oxygen ends up as a lone fragment.
    m = parse_smiles("CCCOCCC(=O)c1ccccc1")
    cb = cleavable_bonds(m)
    fr = fragments(m, cb)
    assert any(len(f) == 1 and m.atoms[f[0]].elem == 8 for f in fr), \
        f"ether canary failed: {fr}"


def main():
    run_canaries()
    path = sys.argv[1]
    records = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            smiles = line.split("\t")[0]
            mol = parse_smiles(smiles)
            cb = cleavable_bonds(mol)
            fr = fragments(mol, cb)
            records.append({
                "smiles": smiles,
                "atoms": len(mol.atoms),
                "bonds": len(mol.bonds),
                "aromatic_atoms": [i for i, a in enumerate(mol.atoms) if a.aromatic],
                "ring_bonds": [list(p) for p in ring_bond_pairs(mol)],
                "cleavable": [list(p) for p in cb],
                "k": len(fr),
                "motifs": fr,
            })
    json.dump(records, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
