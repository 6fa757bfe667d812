//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end. Links the C API only; all chemistry and numerics
// live behind moltok.h.

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "moltok/moltok.h"

namespace {

// ---- small C-API RAII helpers --------------------------------------

struct StringOut {
  char* ptr = nullptr;
  ~StringOut() { mt_string_free(ptr); }
  std::string str() const { return ptr != nullptr ? ptr : ""; }
};

struct MoleculeHandle {
  mt_molecule* ptr = nullptr;
  ~MoleculeHandle() { mt_molecule_free(ptr); }
};

struct RegistryHandle {
  mt_registry* ptr = nullptr;
  ~RegistryHandle() { mt_registry_free(ptr); }
};

struct ModelHandle {
  mt_model* ptr = nullptr;
  ~ModelHandle() { mt_model_free(ptr); }
};

// Exit code carrying failure.
struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void die(mt_status status, const std::string& context) {
  throw CliError{status == MT_ERR_NUMERIC ? 2 : 1,
                 context.empty() ? mt_last_error()
                                 : context + ": " + mt_last_error()};
}

// ---- corpus reading -------------------------------------------------

struct CorpusEntry {
  long line = 0;
  std::string smiles;
  std::string caption;
};

std::vector<CorpusEntry> read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{1, "cannot open corpus file '" + path + "'"};
  std::vector<CorpusEntry> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    CorpusEntry e;
    e.line = lineno;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      e.smiles = line;
    } else {
      e.smiles = line.substr(0, tab);
      e.caption = line.substr(tab + 1);
    }
    if (e.smiles.empty())
      throw CliError{1, path + ":" + std::to_string(lineno) + ": empty SMILES"};
    out.push_back(std::move(e));
  }
  return out;
}

// ---- config file ----------------------------------------------------

struct ConfigBinding {
  std::string key;
  CLI::Option* option = nullptr;
  std::function<void(const std::string&)> apply;
  std::function<std::string()> current;
};

class ConfiguredCommand {
public:
  ConfiguredCommand(CLI::App* cmd, std::string name)
      : cmd_(cmd), name_(std::move(name)) {
    config_opt_ = cmd->add_option("--config", config_path_,
                                  "flat key=value settings file; command-line "
                                  "flags override file values");
    cmd->add_option("--jobs", jobs_, "worker threads for per-molecule stages")
        ->capture_default_str();
  }

  CLI::App* cmd() { return cmd_; }
  int jobs() const { return jobs_ < 1 ? 1 : jobs_; }
  const std::string& name() const { return name_; }

  void bind_string(const std::string& key, CLI::Option* opt, std::string* var) {
    bindings_.push_back({key, opt, [var](const std::string& v) { *var = v; },
                         [var] { return *var; }});
  }
  void bind_u64(const std::string& key, CLI::Option* opt, std::uint64_t* var) {
    bindings_.push_back({key, opt,
                         [var](const std::string& v) { *var = std::stoull(v); },
                         [var] { return std::to_string(*var); }});
  }
  void bind_int(const std::string& key, CLI::Option* opt, int* var) {
    bindings_.push_back({key, opt,
                         [var](const std::string& v) { *var = std::stoi(v); },
                         [var] { return std::to_string(*var); }});
  }
  void bind_double(const std::string& key, CLI::Option* opt, double* var) {
    bindings_.push_back({key, opt,
                         [var](const std::string& v) { *var = std::stod(v); },
                         [var] {
                           char buf[40];
                           std::snprintf(buf, sizeof buf, "%.17g", *var);
                           return std::string(buf);
                         }});
  }
  void bind_flag(const std::string& key, CLI::Option* opt, bool* var) {
    bindings_.push_back({key, opt,
                         [var, key](const std::string& v) {
                           if (v == "true" || v == "1")
                             *var = true;
                           else if (v == "false" || v == "0")
                             *var = false;
                           else
                             throw CliError{1, "config key '" + key +
                                                   "' expects true/false"};
                         },
                         [var] { return *var ? "true" : "false"; }});
  }

  // Applies the config file (unknown keys rejected; flags win).
  void finish() {
    if (config_path_.empty()) return;
    std::ifstream in(config_path_, std::ios::binary);
    if (!in) throw CliError{1, "cannot open config file '" + config_path_ + "'"};
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw CliError{1, config_path_ + ":" + std::to_string(lineno) +
                              ": expected key=value"};
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      ConfigBinding* binding = nullptr;
      for (ConfigBinding& b : bindings_)
        if (b.key == key) binding = &b;
      if (binding == nullptr)
        throw CliError{1, config_path_ + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'"};
      if (binding->option->count() == 0) binding->apply(value);
    }
  }

  // Echo of the effective settings next to the output file.
  void echo_config(const std::string& out_path) const {
    if (out_path.empty()) return;
    const auto dir = std::filesystem::path(out_path).parent_path();
    const auto echo_path =
        (dir.empty() ? std::filesystem::path(".") : dir) /
        (name_ + ".effective-config");
    std::ofstream out(echo_path, std::ios::binary);
    if (!out) return;  // echo is best effort
    out << "subcommand=" << name_ << "\n";
    std::map<std::string, std::string> sorted;
    for (const ConfigBinding& b : bindings_) sorted[b.key] = b.current();
    for (const auto& [k, v] : sorted) out << k << "=" << v << "\n";
  }

private:
  CLI::App* cmd_;
  std::string name_;
  std::string config_path_;
  CLI::Option* config_opt_ = nullptr;
  int jobs_ = 1;
  std::vector<ConfigBinding> bindings_;
};

// ---- ordered parallel map -------------------------------------------

struct ItemResult {
  std::string text;
  int error_code = 0;
  std::string error;
};

std::vector<ItemResult> ordered_map(
    std::size_t count, int jobs,
    const std::function<ItemResult(std::size_t)>& fn) {
  std::vector<ItemResult> results(count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      results[i] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(jobs, static_cast<int>(count ? count : 1));
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return results;
}

// Writes results in input order; fails on the first error in input order.
void emit_results(const std::vector<ItemResult>& results,
                  const std::string& out_path) {
  for (const ItemResult& r : results)
    if (r.error_code != 0) throw CliError{r.error_code, r.error};
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw CliError{1, "cannot write output file '" + out_path + "'"};
    out = &file;
  }
  for (const ItemResult& r : results) *out << r.text;
  out->flush();
}

std::string item_id(const std::string& corpus_path, long line) {
  return corpus_path + ":" + std::to_string(line);
}

RegistryHandle open_registry(const std::string& path) {
  RegistryHandle reg;
  const mt_status st = path.empty() ? mt_registry_builtin(&reg.ptr)
                                    : mt_registry_load(path.c_str(), &reg.ptr);
  if (st != MT_OK) die(st, "registry");
  return reg;
}

// Per-molecule pipeline runner shared by most subcommands.
void run_per_molecule(ConfiguredCommand& cc, const std::string& corpus_path,
                      const std::string& out_path,
                      const std::function<ItemResult(const CorpusEntry&,
                                                     std::size_t)>& fn) {
  const auto corpus = read_corpus(corpus_path);
  const auto results = ordered_map(
      corpus.size(), cc.jobs(),
      [&](std::size_t i) { return fn(corpus[i], i); });
  emit_results(results, out_path);
  cc.echo_config(out_path);
}

ItemResult parse_failure(const std::string& corpus_path, const CorpusEntry& e,
                         mt_status st) {
  ItemResult r;
  r.error_code = st == MT_ERR_NUMERIC ? 2 : 1;
  r.error = corpus_path + ":" + std::to_string(e.line) + ": " + mt_last_error();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"molecular graph tokenization toolkit"};
  app.require_subcommand(1);

  // ---- parse ----
  auto* parse_cmd = app.add_subcommand("parse", "parse SMILES into graph dumps");
  ConfiguredCommand parse_cc(parse_cmd, "parse");
  std::string parse_corpus_path, parse_out;
  parse_cc.bind_string("corpus",
                       parse_cmd->add_option("--corpus", parse_corpus_path,
                                             "input corpus, one SMILES per line")
                           ->capture_default_str(),
                       &parse_corpus_path);
  parse_cc.bind_string("out",
                       parse_cmd->add_option("--out", parse_out,
                                             "output path (default stdout)")
                           ->capture_default_str(),
                       &parse_out);

  // ---- detect-fg ----
  auto* detect_cmd =
      app.add_subcommand("detect-fg", "count functional groups per molecule");
  ConfiguredCommand detect_cc(detect_cmd, "detect-fg");
  std::string detect_corpus, detect_out, detect_registry;
  detect_cc.bind_string("corpus",
                        detect_cmd->add_option("--corpus", detect_corpus,
                                               "input corpus")
                            ->capture_default_str(),
                        &detect_corpus);
  detect_cc.bind_string("out",
                        detect_cmd->add_option("--out", detect_out,
                                               "output path (default stdout)")
                            ->capture_default_str(),
                        &detect_out);
  detect_cc.bind_string("registry",
                        detect_cmd->add_option("--registry", detect_registry,
                                               "functional-group registry file "
                                               "(default: built-in table)")
                            ->capture_default_str(),
                        &detect_registry);

  // ---- fragment ----
  auto* frag_cmd = app.add_subcommand("fragment", "cleave molecules into motifs");
  ConfiguredCommand frag_cc(frag_cmd, "fragment");
  std::string frag_corpus, frag_out;
  frag_cc.bind_string("corpus",
                      frag_cmd->add_option("--corpus", frag_corpus, "input corpus")
                          ->capture_default_str(),
                      &frag_corpus);
  frag_cc.bind_string("out",
                      frag_cmd->add_option("--out", frag_out,
                                           "output path (default stdout)")
                          ->capture_default_str(),
                      &frag_out);

  // ---- build-hier ----
  auto* hier_cmd = app.add_subcommand(
      "build-hier", "build supernode-augmented graphs and report counts");
  ConfiguredCommand hier_cc(hier_cmd, "build-hier");
  std::string hier_corpus, hier_out;
  bool hier_dump = false;
  hier_cc.bind_string("corpus",
                      hier_cmd->add_option("--corpus", hier_corpus, "input corpus")
                          ->capture_default_str(),
                      &hier_corpus);
  hier_cc.bind_string("out",
                      hier_cmd->add_option("--out", hier_out,
                                           "output path (default stdout)")
                          ->capture_default_str(),
                      &hier_out);
  hier_cc.bind_flag("dump",
                    hier_cmd->add_flag("--dump", hier_dump,
                                       "emit full node/edge/PE dumps")
                        ->capture_default_str(),
                    &hier_dump);

  // ---- tokenize ----
  auto* tok_cmd = app.add_subcommand("tokenize", "emit token streams");
  ConfiguredCommand tok_cc(tok_cmd, "tokenize");
  std::string tok_corpus, tok_out, tok_mode = "hight", tok_checkpoint;
  std::uint64_t tok_seed = 0;
  int tok_dout = 308;
  tok_cc.bind_string("corpus",
                     tok_cmd->add_option("--corpus", tok_corpus, "input corpus")
                         ->capture_default_str(),
                     &tok_corpus);
  tok_cc.bind_string("out",
                     tok_cmd->add_option("--out", tok_out,
                                         "output path (default stdout)")
                         ->capture_default_str(),
                     &tok_out);
  tok_cc.bind_string("mode",
                     tok_cmd->add_option("--mode", tok_mode,
                                         "node (plain graph) or hight "
                                         "(hierarchical stream)")
                         ->capture_default_str(),
                     &tok_mode);
  tok_cc.bind_string("checkpoint",
                     tok_cmd->add_option("--checkpoint", tok_checkpoint,
                                         "trained model file; omitted means a "
                                         "seed-initialized model")
                         ->capture_default_str(),
                     &tok_checkpoint);
  tok_cc.bind_u64("seed",
                  tok_cmd->add_option("--seed", tok_seed,
                                      "seed for the fallback model")
                      ->capture_default_str(),
                  &tok_seed);
  tok_cc.bind_int("d_out",
                  tok_cmd->add_option("--d-out", tok_dout,
                                      "adapter output width of the fallback "
                                      "model")
                      ->capture_default_str(),
                  &tok_dout);

  // ---- train-tokenizer ----
  auto* train_cmd =
      app.add_subcommand("train-tokenizer", "train the VQ graph tokenizer");
  ConfiguredCommand train_cc(train_cmd, "train-tokenizer");
  std::string train_corpus, train_out, train_trace;
  mt_train_options topt = mt_train_options_default();
  bool train_normalize = topt.normalize_embed_term != 0;
  train_cc.bind_string("corpus",
                       train_cmd->add_option("--corpus", train_corpus,
                                             "training corpus")
                           ->capture_default_str(),
                       &train_corpus);
  train_cc.bind_string("out",
                       train_cmd->add_option("--out", train_out,
                                             "checkpoint output path")
                           ->capture_default_str(),
                       &train_out);
  train_cc.bind_string("trace",
                       train_cmd->add_option("--trace", train_trace,
                                             "CSV loss trace path")
                           ->capture_default_str(),
                       &train_trace);
  train_cc.bind_u64("seed",
                    train_cmd->add_option("--seed", topt.seed, "training seed")
                        ->capture_default_str(),
                    &topt.seed);
  train_cc.bind_double("gamma",
                       train_cmd->add_option("--gamma", topt.gamma,
                                             "cosine term exponent")
                           ->capture_default_str(),
                       &topt.gamma);
  train_cc.bind_double("beta",
                       train_cmd->add_option("--beta", topt.beta,
                                             "commitment weight")
                           ->capture_default_str(),
                       &topt.beta);
  train_cc.bind_double("mask_rate",
                       train_cmd->add_option("--mask-rate", topt.mask_rate,
                                             "fraction of atoms masked")
                           ->capture_default_str(),
                       &topt.mask_rate);
  train_cc.bind_double("step_size",
                       train_cmd->add_option("--step-size", topt.step_size,
                                             "optimizer step size")
                           ->capture_default_str(),
                       &topt.step_size);
  train_cc.bind_int("steps",
                    train_cmd->add_option("--steps", topt.steps,
                                          "optimization steps")
                        ->capture_default_str(),
                    &topt.steps);
  train_cc.bind_int("batch_size",
                    train_cmd->add_option("--batch-size", topt.batch_size,
                                          "molecules per step")
                        ->capture_default_str(),
                    &topt.batch_size);
  train_cc.bind_int("codebook_size",
                    train_cmd->add_option("--codebook-size", topt.codebook_size,
                                          "atom codebook rows (split over "
                                          "C/N/O/other)")
                        ->capture_default_str(),
                    &topt.codebook_size);
  train_cc.bind_int("motif_codebook_size",
                    train_cmd
                        ->add_option("--motif-codebook-size",
                                     topt.motif_codebook_size,
                                     "motif codebook rows")
                        ->capture_default_str(),
                    &topt.motif_codebook_size);
  train_cc.bind_int("adapter_dim",
                    train_cmd->add_option("--adapter-dim", topt.adapter_dim,
                                          "adapter output width")
                        ->capture_default_str(),
                    &topt.adapter_dim);
  train_cc.bind_flag("normalize_embed_term",
                     train_cmd
                         ->add_flag("--normalize-embed-term", train_normalize,
                                    "deviation switch: also average the "
                                    "commitment term over nodes")
                         ->capture_default_str(),
                     &train_normalize);

  // ---- gen-motifhallu ----
  auto* qa_cmd = app.add_subcommand("gen-motifhallu",
                                    "generate Yes/No functional-group items");
  ConfiguredCommand qa_cc(qa_cmd, "gen-motifhallu");
  std::string qa_corpus, qa_out, qa_registry;
  std::uint64_t qa_seed = 0;
  qa_cc.bind_string("corpus",
                    qa_cmd->add_option("--corpus", qa_corpus, "input corpus")
                        ->capture_default_str(),
                    &qa_corpus);
  qa_cc.bind_string("out",
                    qa_cmd->add_option("--out", qa_out,
                                       "output path (default stdout)")
                        ->capture_default_str(),
                    &qa_out);
  qa_cc.bind_string("registry",
                    qa_cmd->add_option("--registry", qa_registry,
                                       "registry file (default built-in)")
                        ->capture_default_str(),
                    &qa_registry);
  qa_cc.bind_u64("seed",
                 qa_cmd->add_option("--seed", qa_seed, "negative-sampling seed")
                     ->capture_default_str(),
                 &qa_seed);

  // ---- augment-captions ----
  auto* cap_cmd = app.add_subcommand(
      "augment-captions", "prepend functional-group sentences to captions");
  ConfiguredCommand cap_cc(cap_cmd, "augment-captions");
  std::string cap_corpus, cap_out, cap_registry;
  std::uint64_t cap_seed = 0;
  int cap_kneg = 4;
  cap_cc.bind_string("corpus",
                     cap_cmd->add_option("--corpus", cap_corpus,
                                         "corpus with SMILES<TAB>caption lines")
                         ->capture_default_str(),
                     &cap_corpus);
  cap_cc.bind_string("out",
                     cap_cmd->add_option("--out", cap_out,
                                         "output path (default stdout)")
                         ->capture_default_str(),
                     &cap_out);
  cap_cc.bind_string("registry",
                     cap_cmd->add_option("--registry", cap_registry,
                                         "registry file (default built-in)")
                         ->capture_default_str(),
                     &cap_registry);
  cap_cc.bind_u64("seed",
                  cap_cmd->add_option("--seed", cap_seed,
                                      "negative-sampling seed")
                      ->capture_default_str(),
                  &cap_seed);
  cap_cc.bind_int("k_neg",
                  cap_cmd->add_option("--k-neg", cap_kneg,
                                      "absent groups named per caption")
                      ->capture_default_str(),
                  &cap_kneg);

  // ---- eval-hallu ----
  auto* eval_cmd =
      app.add_subcommand("eval-hallu", "score predictions against gold items");
  ConfiguredCommand eval_cc(eval_cmd, "eval-hallu");
  std::string eval_gold, eval_pred, eval_out;
  eval_cc.bind_string("gold",
                      eval_cmd->add_option("--gold", eval_gold,
                                           "gold items (gen-motifhallu output)")
                          ->capture_default_str(),
                      &eval_gold);
  eval_cc.bind_string("predictions",
                      eval_cmd->add_option("--predictions", eval_pred,
                                           "prediction JSON lines")
                          ->capture_default_str(),
                      &eval_pred);
  eval_cc.bind_string("out",
                      eval_cmd->add_option("--out", eval_out,
                                           "machine report path (default "
                                           "stdout)")
                          ->capture_default_str(),
                      &eval_out);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e) == 0 ? 0 : 1;
    }

    if (parse_cmd->parsed()) {
      parse_cc.finish();
      if (parse_corpus_path.empty()) throw CliError{1, "parse: --corpus is required"};
      run_per_molecule(parse_cc, parse_corpus_path, parse_out,
                       [&](const CorpusEntry& e, std::size_t) {
                         MoleculeHandle mol;
                         mt_status st = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (st != MT_OK) return parse_failure(parse_corpus_path, e, st);
                         StringOut json;
                         st = mt_molecule_dump_json(
                             mol.ptr, item_id(parse_corpus_path, e.line).c_str(),
                             &json.ptr);
                         if (st != MT_OK) return parse_failure(parse_corpus_path, e, st);
                         return ItemResult{json.str() + "\n", 0, ""};
                       });
    } else if (detect_cmd->parsed()) {
      detect_cc.finish();
      if (detect_corpus.empty()) throw CliError{1, "detect-fg: --corpus is required"};
      RegistryHandle reg = open_registry(detect_registry);
      run_per_molecule(detect_cc, detect_corpus, detect_out,
                       [&](const CorpusEntry& e, std::size_t) {
                         MoleculeHandle mol;
                         mt_status st = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (st != MT_OK) return parse_failure(detect_corpus, e, st);
                         StringOut json;
                         st = mt_detect_groups_json(
                             mol.ptr, reg.ptr,
                             item_id(detect_corpus, e.line).c_str(), &json.ptr);
                         if (st != MT_OK) return parse_failure(detect_corpus, e, st);
                         return ItemResult{json.str() + "\n", 0, ""};
                       });
    } else if (frag_cmd->parsed()) {
      frag_cc.finish();
      if (frag_corpus.empty()) throw CliError{1, "fragment: --corpus is required"};
      run_per_molecule(frag_cc, frag_corpus, frag_out,
                       [&](const CorpusEntry& e, std::size_t) {
                         MoleculeHandle mol;
                         mt_status st = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (st != MT_OK) return parse_failure(frag_corpus, e, st);
                         StringOut line;
                         st = mt_fragment_line(mol.ptr, &line.ptr);
                         if (st != MT_OK) return parse_failure(frag_corpus, e, st);
                         return ItemResult{line.str() + "\n", 0, ""};
                       });
    } else if (hier_cmd->parsed()) {
      hier_cc.finish();
      if (hier_corpus.empty()) throw CliError{1, "build-hier: --corpus is required"};
      run_per_molecule(hier_cc, hier_corpus, hier_out,
                       [&](const CorpusEntry& e, std::size_t) {
                         MoleculeHandle mol;
                         mt_status st = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (st != MT_OK) return parse_failure(hier_corpus, e, st);
                         StringOut json;
                         st = mt_hier_json(mol.ptr,
                                           item_id(hier_corpus, e.line).c_str(),
                                           hier_dump ? 1 : 0, &json.ptr);
                         if (st != MT_OK) return parse_failure(hier_corpus, e, st);
                         return ItemResult{json.str() + "\n", 0, ""};
                       });
    } else if (tok_cmd->parsed()) {
      tok_cc.finish();
      if (tok_corpus.empty()) throw CliError{1, "tokenize: --corpus is required"};
      ModelHandle model;
      mt_status st = tok_checkpoint.empty()
                         ? mt_model_create(tok_seed, tok_dout, &model.ptr)
                         : mt_model_load(tok_checkpoint.c_str(), &model.ptr);
      if (st != MT_OK) die(st, "tokenize");
      run_per_molecule(tok_cc, tok_corpus, tok_out,
                       [&](const CorpusEntry& e, std::size_t) {
                         MoleculeHandle mol;
                         mt_status s = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (s != MT_OK) return parse_failure(tok_corpus, e, s);
                         StringOut jsonl;
                         s = mt_tokenize_jsonl(model.ptr, mol.ptr, tok_mode.c_str(),
                                               item_id(tok_corpus, e.line).c_str(),
                                               &jsonl.ptr);
                         if (s != MT_OK) return parse_failure(tok_corpus, e, s);
                         return ItemResult{jsonl.str(), 0, ""};
                       });
    } else if (train_cmd->parsed()) {
      train_cc.finish();
      if (train_corpus.empty() || train_out.empty())
        throw CliError{1, "train-tokenizer: --corpus and --out are required"};
      topt.normalize_embed_term = train_normalize ? 1 : 0;
      StringOut usage;
      const mt_status st = mt_train_tokenizer(
          train_corpus.c_str(), &topt, train_out.c_str(),
          train_trace.empty() ? nullptr : train_trace.c_str(), &usage.ptr);
      if (st != MT_OK) die(st, "train-tokenizer");
      std::cerr << usage.str() << "\n";
      train_cc.echo_config(train_out);
    } else if (qa_cmd->parsed()) {
      qa_cc.finish();
      if (qa_corpus.empty()) throw CliError{1, "gen-motifhallu: --corpus is required"};
      RegistryHandle reg = open_registry(qa_registry);
      run_per_molecule(qa_cc, qa_corpus, qa_out,
                       [&](const CorpusEntry& e, std::size_t ordinal) {
                         MoleculeHandle mol;
                         mt_status st = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (st != MT_OK) return parse_failure(qa_corpus, e, st);
                         StringOut jsonl;
                         st = mt_motifhallu_jsonl(
                             mol.ptr, reg.ptr, item_id(qa_corpus, e.line).c_str(),
                             e.smiles.c_str(), qa_seed, ordinal, &jsonl.ptr);
                         if (st != MT_OK) return parse_failure(qa_corpus, e, st);
                         return ItemResult{jsonl.str(), 0, ""};
                       });
    } else if (cap_cmd->parsed()) {
      cap_cc.finish();
      if (cap_corpus.empty())
        throw CliError{1, "augment-captions: --corpus is required"};
      RegistryHandle reg = open_registry(cap_registry);
      run_per_molecule(cap_cc, cap_corpus, cap_out,
                       [&](const CorpusEntry& e, std::size_t ordinal) {
                         MoleculeHandle mol;
                         mt_status st = mt_molecule_parse(e.smiles.c_str(), &mol.ptr);
                         if (st != MT_OK) return parse_failure(cap_corpus, e, st);
                         StringOut json;
                         st = mt_augment_caption_json(
                             mol.ptr, reg.ptr, e.smiles.c_str(),
                             e.caption.c_str(), cap_kneg, cap_seed, ordinal,
                             &json.ptr);
                         if (st != MT_OK) return parse_failure(cap_corpus, e, st);
                         return ItemResult{json.str() + "\n", 0, ""};
                       });
    } else if (eval_cmd->parsed()) {
      eval_cc.finish();
      if (eval_gold.empty() || eval_pred.empty())
        throw CliError{1, "eval-hallu: --gold and --predictions are required"};
      StringOut report, table;
      const mt_status st = mt_eval_hallu_files(eval_gold.c_str(),
                                               eval_pred.c_str(), &report.ptr,
                                               &table.ptr);
      if (st != MT_OK) die(st, "eval-hallu");
      std::cout << table.str();
      if (eval_out.empty()) {
        std::cout << report.str() << "\n";
      } else {
        std::ofstream out(eval_out, std::ios::binary);
        if (!out) throw CliError{1, "cannot write report file '" + eval_out + "'"};
        out << report.str() << "\n";
      }
      eval_cc.echo_config(eval_out);
    }
    return 0;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
