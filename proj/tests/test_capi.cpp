//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "moltok/moltok.h"

namespace fs = std::filesystem;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { mt_string_free(p); }
  std::string s() const { return p != nullptr ? p : ""; }
};

}  // namespace

TEST_CASE("c api: parse, counts, hydrogens, and error reporting") {
  mt_molecule* mol = nullptr;
  REQUIRE(mt_molecule_parse("CC(=O)O", &mol) == MT_OK);
  CHECK(mt_molecule_num_atoms(mol) == 4);
  CHECK(mt_molecule_num_bonds(mol) == 3);
  CHECK(mt_molecule_implicit_hydrogens(mol, 3) == 1);
  CHECK(mt_molecule_implicit_hydrogens(mol, 99) == -1);
  Str json;
  CHECK(mt_molecule_dump_json(mol, "x:1", &json.p) == MT_OK);
  CHECK(json.s().find("\"id\": \"x:1\"") != std::string::npos);
  mt_molecule_free(mol);

  mt_molecule* bad = nullptr;
  CHECK(mt_molecule_parse("CC(C", &bad) == MT_ERR_INPUT);
  CHECK(std::strlen(mt_last_error()) > 0);
  CHECK(std::string(mt_last_error()).find("byte") != std::string::npos);
}

TEST_CASE("c api: registry handles") {
  mt_registry* reg = nullptr;
  REQUIRE(mt_registry_builtin(&reg) == MT_OK);
  CHECK(mt_registry_size(reg) == 38);
  CHECK(std::string(mt_registry_name(reg, 1)) == "carboxylic acids");
  CHECK(std::string(mt_registry_smarts(reg, 1)) == "*-C(=O)[O;D1]");
  CHECK(mt_registry_name(reg, 38) == nullptr);

  mt_molecule* mol = nullptr;
  REQUIRE(mt_molecule_parse("CC(=O)O", &mol) == MT_OK);
  Str json;
  CHECK(mt_detect_groups_json(mol, reg, "m", &json.p) == MT_OK);
  CHECK(json.s().find("\"carboxylic acids\": 1") != std::string::npos);
  mt_molecule_free(mol);
  mt_registry_free(reg);
}

TEST_CASE("c api: fragmentation and hierarchy dumps") {
  mt_molecule* mol = nullptr;
  REQUIRE(mt_molecule_parse("CCOC(=O)CC", &mol) == MT_OK);
  Str line;
  CHECK(mt_fragment_line(mol, &line.p) == MT_OK);
  CHECK(line.s() == "CCOC(=O)CC\t3\t0,1;2;3,4,5,6");
  Str stats;
  CHECK(mt_hier_json(mol, "m", 0, &stats.p) == MT_OK);
  CHECK(stats.s().find("\"nodes\": 11") != std::string::npos);
  CHECK(stats.s().find("\"edges\": 20") != std::string::npos);
  Str dump;
  CHECK(mt_hier_json(mol, "m", 1, &dump.p) == MT_OK);
  CHECK(dump.s().find("\"pe\"") != std::string::npos);
  mt_molecule_free(mol);
}

TEST_CASE("c api: models and token streams") {
  const fs::path path = fs::temp_directory_path() / "moltok_capi_model.bin";
  mt_model* model = nullptr;
  REQUIRE(mt_model_create(11, 16, &model) == MT_OK);
  REQUIRE(mt_model_save(model, path.string().c_str()) == MT_OK);
  mt_model* loaded = nullptr;
  REQUIRE(mt_model_load(path.string().c_str(), &loaded) == MT_OK);

  mt_molecule* mol = nullptr;
  REQUIRE(mt_molecule_parse("CCO", &mol) == MT_OK);
  Str fresh, reloaded;
  REQUIRE(mt_tokenize_jsonl(model, mol, "hight", "m", &fresh.p) == MT_OK);
  REQUIRE(mt_tokenize_jsonl(loaded, mol, "hight", "m", &reloaded.p) == MT_OK);
  CHECK(fresh.s() == reloaded.s());  // checkpoints reload bit-exactly
  int lines = 0;
  for (char c : fresh.s()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 5);

  Str node_mode;
  REQUIRE(mt_tokenize_jsonl(model, mol, "node", "m", &node_mode.p) == MT_OK);
  int node_lines = 0;
  for (char c : node_mode.s()) node_lines += c == '\n' ? 1 : 0;
  CHECK(node_lines == 3);

  Str nope;
  CHECK(mt_tokenize_jsonl(model, mol, "fancy", "m", &nope.p) == MT_ERR_INPUT);

  mt_molecule_free(mol);
  mt_model_free(model);
  mt_model_free(loaded);
  fs::remove(path);
}

TEST_CASE("c api: benchmark generation and scoring") {
  mt_registry* reg = nullptr;
  REQUIRE(mt_registry_builtin(&reg) == MT_OK);
  mt_molecule* mol = nullptr;
  REQUIRE(mt_molecule_parse("CCO", &mol) == MT_OK);

  Str qa;
  REQUIRE(mt_motifhallu_jsonl(mol, reg, "c:1", "CCO", 5, 0, &qa.p) == MT_OK);
  int lines = 0;
  for (char c : qa.s()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 7);  // 1 positive + 6 negatives
  CHECK(qa.s().find("Is there a side-chain hydroxyls group in the molecule?") !=
        std::string::npos);

  Str cap;
  REQUIRE(mt_augment_caption_json(mol, reg, "CCO", "Ethanol.", 4, 5, 0,
                                  &cap.p) == MT_OK);
  CHECK(cap.s().find("This molecule has 1 side-chain hydroxyls functional "
                     "group.") != std::string::npos);

  const fs::path dir = fs::temp_directory_path();
  const fs::path gold = dir / "moltok_capi_gold.jsonl";
  const fs::path pred = dir / "moltok_capi_pred.jsonl";
  {
    std::ofstream g(gold), p(pred);
    g << "{\"id\": \"1\", \"answer\": \"Yes\"}\n"
      << "{\"id\": \"2\", \"answer\": \"No\"}\n";
    p << "{\"id\": \"1\", \"answer\": \"Yes\", \"score\": 0.8}\n"
      << "{\"id\": \"2\", \"answer\": \"No\", \"score\": 0.1}\n";
  }
  Str report, table;
  REQUIRE(mt_eval_hallu_files(gold.string().c_str(), pred.string().c_str(),
                              &report.p, &table.p) == MT_OK);
  CHECK(report.s().find("\"accuracy\": 100") != std::string::npos);
  CHECK(report.s().find("\"auroc\": 100") != std::string::npos);
  CHECK(table.s().find("macro_f1") != std::string::npos);

  // Contract violation: duplicate prediction ids.
  {
    std::ofstream p(pred);
    p << "{\"id\": \"1\", \"answer\": \"Yes\"}\n"
      << "{\"id\": \"1\", \"answer\": \"No\"}\n"
      << "{\"id\": \"2\", \"answer\": \"No\"}\n";
  }
  Str r2, t2;
  CHECK(mt_eval_hallu_files(gold.string().c_str(), pred.string().c_str(),
                            &r2.p, &t2.p) == MT_ERR_INPUT);

  fs::remove(gold);
  fs::remove(pred);
  mt_molecule_free(mol);
  mt_registry_free(reg);
}

TEST_CASE("c api: training writes a loadable checkpoint and a trace") {
  const fs::path dir = fs::temp_directory_path();
  const fs::path corpus = dir / "moltok_capi_corpus.smi";
  {
    std::ofstream c(corpus);
    c << "CCO\nCC(=O)O\nCCN\nCCC\nc1ccccc1\n";
  }
  const fs::path ckpt = dir / "moltok_capi_train.bin";
  const fs::path trace = dir / "moltok_capi_trace.csv";
  mt_train_options opt = mt_train_options_default();
  opt.steps = 2;
  opt.batch_size = 2;
  opt.codebook_size = 32;
  opt.motif_codebook_size = 8;
  Str usage;
  REQUIRE(mt_train_tokenizer(corpus.string().c_str(), &opt,
                             ckpt.string().c_str(), trace.string().c_str(),
                             &usage.p) == MT_OK);
  CHECK(usage.s().find("codebook usage: atom ") != std::string::npos);
  mt_model* model = nullptr;
  REQUIRE(mt_model_load(ckpt.string().c_str(), &model) == MT_OK);
  mt_model_free(model);
  std::ifstream t(trace);
  std::string header;
  std::getline(t, header);
  CHECK(header == "step,term1,term2,term3,total");
  fs::remove(corpus);
  fs::remove(ckpt);
  fs::remove(trace);
}
