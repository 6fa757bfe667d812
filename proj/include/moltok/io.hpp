//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_IO_HPP
#define MOLTOK_IO_HPP

#include <string>
#include <vector>

#include "moltok/chem.hpp"
#include "moltok/datagen.hpp"
#include "moltok/halleval.hpp"
#include "moltok/hier.hpp"

namespace moltok {

// One SMILES per line, optional tab-separated caption, '#' comments and
// blank lines skipped. `line` is the 1-based physical line number.
struct CorpusLine {
  long line = 0;
  std::string smiles;
  std::string caption;
};

std::vector<CorpusLine> read_corpus(const std::string& path);
std::vector<CorpusLine> parse_corpus(const std::string& text,
                                     const std::string& origin);

std::string json_escape(const std::string& s);

// Pipeline record formatting (JSON Lines unless noted).
std::string molecule_json(const std::string& id, const Molecule& mol);
std::string detect_json(const std::string& id, const Molecule& mol,
                        const FunctionalGroupRegistry& registry);
std::string fragment_tsv(const Molecule& mol);  // smiles \t k \t atom lists
std::string hier_json(const std::string& id, const Molecule& mol, bool dump);
std::string qa_json(const QAItem& item);
std::string caption_json(const CaptionRecord& rec);
std::string report_json(const MetricsReport& r);
std::string report_table(const MetricsReport& r);

// Gold items from gen-motifhallu output ({"id", "answer"} per line) and
// predictions ({"id", "answer", "score"?}); errors carry line numbers.
std::vector<GoldItem> read_gold_jsonl(const std::string& path);
std::vector<Prediction> read_predictions_jsonl(const std::string& path);

}  // namespace moltok

#endif  // MOLTOK_IO_HPP
