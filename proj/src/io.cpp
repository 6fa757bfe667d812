//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "moltok/brics.hpp"
#include "moltok/stream.hpp"

namespace moltok {

std::vector<CorpusLine> parse_corpus(const std::string& text,
                                     const std::string& origin) {
  std::vector<CorpusLine> out;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    CorpusLine rec;
    rec.line = lineno;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      rec.smiles = line;
    } else {
      rec.smiles = line.substr(0, tab);
      rec.caption = line.substr(tab + 1);
    }
    if (rec.smiles.empty())
      throw InputError(origin + ":" + std::to_string(lineno) +
                       ": empty SMILES field");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CorpusLine> read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

namespace {

const char* order_name(BondOrder o) {
  switch (o) {
    case BondOrder::Single: return "single";
    case BondOrder::Double: return "double";
    case BondOrder::Triple: return "triple";
    case BondOrder::Aromatic: return "aromatic";
  }
  return "single";
}

}  // namespace

std::string molecule_json(const std::string& id, const Molecule& mol) {
  std::string out = "{\"id\": \"" + json_escape(id) + "\", \"smiles\": \"" +
                    json_escape(mol.source) + "\", \"atoms\": [";
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom& a = mol.atoms[i];
    if (i) out += ", ";
    out += "{\"i\": " + std::to_string(i) + ", \"element\": \"" +
           element_symbol(a.element) + "\", \"z\": " + std::to_string(a.element) +
           ", \"charge\": " + std::to_string(a.formal_charge) +
           ", \"aromatic\": " + (a.aromatic ? "true" : "false") +
           ", \"in_ring\": " + (a.in_ring ? "true" : "false") +
           ", \"h\": " + std::to_string(implicit_hydrogens(mol, i));
    if (a.isotope) out += ", \"isotope\": " + std::to_string(*a.isotope);
    out += "}";
  }
  out += "], \"bonds\": [";
  for (int i = 0; i < mol.num_bonds(); ++i) {
    const Bond& b = mol.bonds[i];
    if (i) out += ", ";
    out += "{\"a\": " + std::to_string(b.a) + ", \"b\": " + std::to_string(b.b) +
           ", \"order\": \"" + order_name(b.order) + "\", \"in_ring\": " +
           (b.in_ring ? "true" : "false") + "}";
  }
  out += "]}";
  return out;
}

std::string detect_json(const std::string& id, const Molecule& mol,
                        const FunctionalGroupRegistry& registry) {
  std::string out = "{\"id\": \"" + json_escape(id) + "\", \"smiles\": \"" +
                    json_escape(mol.source) + "\", \"groups\": {";
  bool first = true;
  for (const auto& [name, count] : detect_functional_groups(mol, registry)) {
    if (!first) out += ", ";
    first = false;
    out += "\"" + json_escape(name) + "\": " + std::to_string(count);
  }
  out += "}}";
  return out;
}

std::string fragment_tsv(const Molecule& mol) {
  const auto motifs = fragment(mol);
  const int k = static_cast<int>(motifs.size()) - 1;
  std::string out = mol.source + "\t" + std::to_string(k) + "\t";
  for (int m = 0; m < k; ++m) {
    if (m) out += ";";
    for (std::size_t i = 0; i < motifs[m].atoms.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(motifs[m].atoms[i]);
    }
  }
  return out;
}

std::string hier_json(const std::string& id, const Molecule& mol, bool dump) {
  const auto motifs = fragment(mol);
  HierGraph g = build_hier(mol, motifs);
  std::string out = "{\"id\": \"" + json_escape(id) + "\", \"n\": " +
                    std::to_string(mol.num_atoms()) + ", \"m\": " +
                    std::to_string(mol.num_bonds()) + ", \"k\": " +
                    std::to_string(g.num_motifs) + ", \"nodes\": " +
                    std::to_string(g.num_nodes()) + ", \"edges\": " +
                    std::to_string(g.num_edges());
  if (dump) {
    laplacian_pe(g, kPeDim);
    out += ", \"node_list\": [";
    for (int u = 0; u < g.num_nodes(); ++u) {
      if (u) out += ", ";
      const char* kind = g.nodes[u].kind == NodeKind::Atom         ? "atom"
                         : g.nodes[u].kind == NodeKind::MotifSuper ? "motif"
                                                                   : "graph";
      out += "{\"kind\": \"" + std::string(kind) +
             "\", \"ref\": " + std::to_string(g.nodes[u].ref) + "}";
    }
    out += "], \"edge_list\": [";
    for (int e = 0; e < g.num_edges(); ++e) {
      if (e) out += ", ";
      out += "[" + std::to_string(g.edges[e].a) + ", " +
             std::to_string(g.edges[e].b) + ", \"" +
             (g.edges[e].kind == EdgeKind::Chemical ? "chemical" : "super") +
             "\"]";
    }
    out += "], \"pe\": [";
    for (int u = 0; u < g.num_nodes(); ++u) {
      if (u) out += ", ";
      out += "[";
      for (int j = 0; j < kPeDim; ++j) {
        if (j) out += ", ";
        out += format_double(g.pe[u][j]);
      }
      out += "]";
    }
    out += "]";
  }
  out += "}";
  return out;
}

std::string qa_json(const QAItem& item) {
  return "{\"id\": \"" + json_escape(item.id) + "\", \"smiles\": \"" +
         json_escape(item.smiles) + "\", \"fg\": \"" + json_escape(item.fg_name) +
         "\", \"question\": \"" + json_escape(item.question) +
         "\", \"answer\": \"" + (item.yes ? "Yes" : "No") + "\"}";
}

std::string caption_json(const CaptionRecord& rec) {
  return "{\"smiles\": \"" + json_escape(rec.smiles) + "\", \"caption\": \"" +
         json_escape(rec.caption) + "\", \"augmented\": \"" +
         json_escape(rec.augmented) + "\"}";
}

std::string report_json(const MetricsReport& r) {
  std::string out = "{\"f1_pos\": " + format_double(r.f1_pos) +
                    ", \"f1_neg\": " + format_double(r.f1_neg) +
                    ", \"macro_f1\": " + format_double(r.macro_f1) +
                    ", \"micro_f1\": " + format_double(r.micro_f1) +
                    ", \"accuracy\": " + format_double(r.accuracy) +
                    ", \"yes_ratio\": " + format_double(r.yes_ratio);
  if (r.auroc) out += ", \"auroc\": " + format_double(*r.auroc);
  out += ", \"tp\": " + std::to_string(r.tp) + ", \"fp\": " + std::to_string(r.fp) +
         ", \"tn\": " + std::to_string(r.tn) + ", \"fn\": " + std::to_string(r.fn) +
         "}";
  return out;
}

std::string report_table(const MetricsReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "metric      value\n"
                "macro_f1    %.1f\n"
                "f1_pos      %.1f\n"
                "f1_neg      %.1f\n"
                "micro_f1    %.1f\n"
                "accuracy    %.1f\n"
                "yes_ratio   %.1f\n",
                r.macro_f1, r.f1_pos, r.f1_neg, r.micro_f1, r.accuracy,
                r.yes_ratio);
  std::string out = buf;
  if (r.auroc) {
    std::snprintf(buf, sizeof buf, "auroc       %.1f\n", *r.auroc);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "confusion   tp=%ld fp=%ld tn=%ld fn=%ld\n",
                r.tp, r.fp, r.tn, r.fn);
  out += buf;
  return out;
}

namespace {

nlohmann::json parse_jsonl_line(const std::string& line, const std::string& path,
                                long lineno) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

bool answer_to_bool(const nlohmann::json& j, const std::string& path,
                    long lineno) {
  const std::string a = j.get<std::string>();
  if (a == "Yes") return true;
  if (a == "No") return false;
  throw InputError(path + ":" + std::to_string(lineno) +
                   ": answer must be \"Yes\" or \"No\", got \"" + a + "\"");
}

}  // namespace

std::vector<GoldItem> read_gold_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open gold file '" + path + "'");
  std::vector<GoldItem> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto j = parse_jsonl_line(line, path, lineno);
    if (!j.contains("id") || !j.contains("answer"))
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": gold lines need \"id\" and \"answer\"");
    out.push_back({j["id"].get<std::string>(),
                   answer_to_bool(j["answer"], path, lineno)});
  }
  return out;
}

std::vector<Prediction> read_predictions_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open predictions file '" + path + "'");
  std::vector<Prediction> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto j = parse_jsonl_line(line, path, lineno);
    if (!j.contains("id") || !j.contains("answer"))
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": prediction lines need \"id\" and \"answer\"");
    Prediction p;
    p.id = j["id"].get<std::string>();
    p.yes = answer_to_bool(j["answer"], path, lineno);
    if (j.contains("score")) p.score = j["score"].get<double>();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace moltok
