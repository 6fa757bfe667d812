//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <fstream>
#include <sstream>

#include "moltok/smarts.hpp"

namespace moltok {

namespace detail {

// Byte-identical to data/functional_groups.tsv; a test keeps them in sync.
const char* builtin_registry_text() {
  return
      "# Functional-group registry: RDKit's FunctionalGroups.txt list, 38 active\n"
      "# entries. Columns: representation<TAB>smarts<TAB>name. Lines starting with\n"
      "# \"# \" are comments; the \"???\" row ships commented out and is not loaded.\n"
      "-NC(=O)CH3\t*-[N;D2]-[C;D3](=O)-[C;D1;H3]\tmethyl amide\n"
      "-C(=O)O\t*-C(=O)[O;D1]\tcarboxylic acids\n"
      "-C(=O)OMe\t*-C(=O)[O;D2]-[C;D1;H3]\tcarbonyl methyl ester\n"
      "-C(=O)H\t*-C(=O)-[C;D1]\tterminal aldehyde\n"
      "-C(=O)N\t*-C(=O)-[N;D1]\tamide\n"
      "-C(=O)CH3\t*-C(=O)-[C;D1;H3]\tcarbonyl methyl\n"
      "-N=C=O\t*-[N;D2]=[C;D2]=[O;D1]\tisocyanate\n"
      "-N=C=S\t*-[N;D2]=[C;D2]=[S;D1]\tisothiocyanate\n"
      "# Nitrogen containing groups\n"
      "-NO2\t*-[N;D3](=[O;D1])[O;D1]\tnitro\n"
      "-N=O\t*-[N;R0]=[O;D1]\tnitroso\n"
      "=N-O\t*=[N;R0]-[O;D1]\toximes\n"
      "=NCH3\t*=[N;R0]-[C;D1;H3]\tImines\n"
      "-N=CH2\t*-[N;R0]=[C;D1;H2]\tImines\n"
      "-N=NCH3\t*-[N;D2]=[N;D2]-[C;D1;H3]\tterminal azo\n"
      "-N=N\t*-[N;D2]=[N;D1]\thydrazines\n"
      "-N#N\t*-[N;D2]#[N;D1]\tdiazo\n"
      "-C#N\t*-[C;D2]#[N;D1]\tcyano\n"
      "# S containing groups\n"
      "-SO2NH2\t*-[S;D4](=[O;D1])(=[O;D1])-[N;D1]\tprimary sulfonamide\n"
      "-NHSO2CH3\t*-[N;D2]-[S;D4](=[O;D1])(=[O;D1])-[C;D1;H3]\tmethyl sulfonamide\n"
      "-SO3H\t*-[S;D4](=O)(=O)-[O;D1]\tsulfonic acid\n"
      "-SO3CH3\t*-[S;D4](=O)(=O)-[O;D2]-[C;D1;H3]\tmethyl ester sulfonyl\n"
      "-SO2CH3\t*-[S;D4](=O)(=O)-[C;D1;H3]\tmethyl sulfonyl\n"
      "-SO2Cl\t*-[S;D4](=O)(=O)-[Cl]\tsulfonyl chloride\n"
      "-SOCH3\t*-[S;D3](=O)-[C;D1]\tmethyl sulfinyl\n"
      "-SCH3\t*-[S;D2]-[C;D1;H3]\tmethylthio\n"
      "-S\t*-[S;D1]\tthiols\n"
      "=S\t*=[S;D1]\tthiocarbonyls\n"
      "# Miscellaneous fragments\n"
      "-X\t*-[#9,#17,#35,#53]\thalogens\n"
      "-tBu\t*-[C;D4]([C;D1])([C;D1])-[C;D1]\tt-butyl\n"
      "-CF3\t*-[C;D4](F)(F)F\ttrifluoromethyl\n"
      "-C#CH\t*-[C;D2]#[C;D1;H]\tacetylenes\n"
      "-cPropyl\t*-[C;D3]1-[C;D2]-[C;D2]1\tcyclopropyl\n"
      "# Teeny groups\n"
      "-OEt\t*-[O;D2]-[C;D2]-[C;D1;H3]\tethoxy\n"
      "-OMe\t*-[O;D2]-[C;D1;H3]\tmethoxy\n"
      "-O\t*-[O;D1]\tside-chain hydroxyls\n"
      "=O\t*=[O;D1]\tside-chain aldehydes or ketones\n"
      "-N\t*-[N;D1]\tprimary amines\n"
      "# =N\t*=[N;D1]\t???\n"
      "#N\t*#[N;D1]\tnitriles\n";
}

}  // namespace detail

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \r");
  std::size_t e = s.find_last_not_of(" \r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

bool is_comment(const std::string& line) {
  if (line.empty()) return true;
  if (line[0] != '#') return false;
  // "#N" is the nitriles representation, "# ..." is a comment.
  return line.size() == 1 || line[1] == ' ' || line[1] == '\t';
}

}  // namespace

FunctionalGroupRegistry FunctionalGroupRegistry::load(std::istream& in) {
  FunctionalGroupRegistry reg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_comment(line)) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw InputError("registry line " + std::to_string(lineno) +
                       ": expected representation<TAB>smarts<TAB>name");
    FunctionalGroup fg;
    fg.repr = strip(line.substr(0, t1));
    fg.smarts = strip(line.substr(t1 + 1, t2 - t1 - 1));
    fg.name = strip(line.substr(t2 + 1));
    if (fg.smarts.empty() || fg.name.empty())
      throw InputError("registry line " + std::to_string(lineno) +
                       ": empty smarts or name");
    try {
      fg.pattern = parse_smarts(fg.smarts, SmartsDialect::Table7);
    } catch (const InputError& e) {
      throw InputError("registry line " + std::to_string(lineno) + ": " +
                       e.what());
    }
    reg.entries_.push_back(std::move(fg));
  }
  return reg;
}

FunctionalGroupRegistry FunctionalGroupRegistry::load_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open registry file '" + path + "'");
  return load(in);
}

const FunctionalGroupRegistry& FunctionalGroupRegistry::builtin() {
  static const FunctionalGroupRegistry reg = [] {
    std::istringstream in(detail::builtin_registry_text());
    return load(in);
  }();
  return reg;
}

}  // namespace moltok
