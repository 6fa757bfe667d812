//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/moltok.h"

#include <cstring>
#include <fstream>
#include <string>

#include "moltok/io.hpp"
#include "moltok/model.hpp"
#include "moltok/stream.hpp"
#include "moltok/vq.hpp"

namespace {

thread_local std::string g_last_error;

mt_status fail(mt_status code, const char* what) {
  g_last_error = what;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

// Uniform exception wall: InputError -> MT_ERR_INPUT, NumericError ->
// MT_ERR_NUMERIC.
template <typename Fn>
mt_status guarded(Fn&& fn) {
  try {
    fn();
    return MT_OK;
  } catch (const moltok::NumericError& e) {
    return fail(MT_ERR_NUMERIC, e.what());
  } catch (const moltok::InputError& e) {
    return fail(MT_ERR_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(MT_ERR_INPUT, e.what());
  }
}

}  // namespace

struct mt_molecule {
  moltok::Molecule mol;
};

struct mt_registry {
  const moltok::FunctionalGroupRegistry* ref = nullptr;  // builtin
  moltok::FunctionalGroupRegistry owned;

  const moltok::FunctionalGroupRegistry& get() const {
    return ref != nullptr ? *ref : owned;
  }
};

struct mt_model {
  moltok::Model model;
};

extern "C" {

const char* mt_version(void) { return "0.1.0"; }

const char* mt_last_error(void) { return g_last_error.c_str(); }

void mt_string_free(char* s) { delete[] s; }

mt_status mt_molecule_parse(const char* smiles, mt_molecule** out) {
  if (smiles == nullptr || out == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    auto mol = std::make_unique<mt_molecule>();
    mol->mol = moltok::parse_smiles(smiles);
    *out = mol.release();
  });
}

void mt_molecule_free(mt_molecule* mol) { delete mol; }

int mt_molecule_num_atoms(const mt_molecule* mol) {
  return mol != nullptr ? mol->mol.num_atoms() : -1;
}

int mt_molecule_num_bonds(const mt_molecule* mol) {
  return mol != nullptr ? mol->mol.num_bonds() : -1;
}

int mt_molecule_implicit_hydrogens(const mt_molecule* mol, int atom) {
  if (mol == nullptr || atom < 0 || atom >= mol->mol.num_atoms()) return -1;
  return moltok::implicit_hydrogens(mol->mol, atom);
}

mt_status mt_molecule_dump_json(const mt_molecule* mol, const char* id,
                                char** out_json) {
  if (mol == nullptr || out_json == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    *out_json = dup_string(
        moltok::molecule_json(id != nullptr ? id : "", mol->mol));
  });
}

mt_status mt_registry_load(const char* path, mt_registry** out) {
  if (path == nullptr || out == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    auto reg = std::make_unique<mt_registry>();
    reg->owned = moltok::FunctionalGroupRegistry::load_file(path);
    *out = reg.release();
  });
}

mt_status mt_registry_builtin(mt_registry** out) {
  if (out == nullptr) return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    auto reg = std::make_unique<mt_registry>();
    reg->ref = &moltok::FunctionalGroupRegistry::builtin();
    *out = reg.release();
  });
}

void mt_registry_free(mt_registry* reg) { delete reg; }

int mt_registry_size(const mt_registry* reg) {
  return reg != nullptr ? reg->get().size() : -1;
}

const char* mt_registry_name(const mt_registry* reg, int index) {
  if (reg == nullptr || index < 0 || index >= reg->get().size()) return nullptr;
  return reg->get().entries()[index].name.c_str();
}

const char* mt_registry_smarts(const mt_registry* reg, int index) {
  if (reg == nullptr || index < 0 || index >= reg->get().size()) return nullptr;
  return reg->get().entries()[index].smarts.c_str();
}

mt_status mt_detect_groups_json(const mt_molecule* mol, const mt_registry* reg,
                                const char* id, char** out_json) {
  if (mol == nullptr || reg == nullptr || out_json == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    *out_json = dup_string(
        moltok::detect_json(id != nullptr ? id : "", mol->mol, reg->get()));
  });
}

mt_status mt_fragment_line(const mt_molecule* mol, char** out_line) {
  if (mol == nullptr || out_line == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] { *out_line = dup_string(moltok::fragment_tsv(mol->mol)); });
}

mt_status mt_hier_json(const mt_molecule* mol, const char* id, int dump,
                       char** out_json) {
  if (mol == nullptr || out_json == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    *out_json = dup_string(
        moltok::hier_json(id != nullptr ? id : "", mol->mol, dump != 0));
  });
}

mt_status mt_model_create(uint64_t seed, int adapter_dim, mt_model** out) {
  if (out == nullptr || adapter_dim <= 0)
    return fail(MT_ERR_INPUT, "bad model arguments");
  return guarded([&] {
    auto m = std::make_unique<mt_model>();
    m->model = moltok::Model::seeded(seed, adapter_dim);
    *out = m.release();
  });
}

mt_status mt_model_load(const char* path, mt_model** out) {
  if (path == nullptr || out == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    auto m = std::make_unique<mt_model>();
    m->model = moltok::load_model(path);
    *out = m.release();
  });
}

mt_status mt_model_save(const mt_model* model, const char* path) {
  if (model == nullptr || path == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] { moltok::save_model(model->model, path); });
}

void mt_model_free(mt_model* model) { delete model; }

mt_status mt_tokenize_jsonl(const mt_model* model, const mt_molecule* mol,
                            const char* mode, const char* mol_id,
                            char** out_jsonl) {
  if (model == nullptr || mol == nullptr || mode == nullptr ||
      out_jsonl == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    const std::string id = mol_id != nullptr ? mol_id : "";
    moltok::TokenStream s;
    if (std::strcmp(mode, "node") == 0) {
      s = moltok::node_centric_stream(mol->mol, model->model, id);
    } else if (std::strcmp(mode, "hight") == 0) {
      s = moltok::hight_stream(mol->mol, model->model, id);
    } else {
      throw moltok::InputError(std::string("unknown tokenize mode '") + mode +
                               "' (expected node or hight)");
    }
    *out_jsonl = dup_string(moltok::serialize(s));
  });
}

mt_train_options mt_train_options_default(void) {
  const moltok::TrainConfig cfg;
  mt_train_options o;
  o.seed = cfg.seed;
  o.gamma = cfg.gamma;
  o.beta = cfg.beta;
  o.mask_rate = cfg.mask_rate;
  o.step_size = cfg.step_size;
  o.steps = cfg.steps;
  o.batch_size = cfg.batch_size;
  o.codebook_size = cfg.codebook_size;
  o.motif_codebook_size = cfg.motif_codebook_size;
  o.adapter_dim = cfg.adapter_dim;
  o.normalize_embed_term = cfg.normalize_embed_term ? 1 : 0;
  return o;
}

mt_status mt_train_tokenizer(const char* corpus_path,
                             const mt_train_options* options,
                             const char* checkpoint_path,
                             const char* trace_csv_path,
                             char** out_usage_summary) {
  if (corpus_path == nullptr || options == nullptr || checkpoint_path == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    moltok::TrainConfig cfg;
    cfg.seed = options->seed;
    cfg.gamma = options->gamma;
    cfg.beta = options->beta;
    cfg.mask_rate = options->mask_rate;
    cfg.step_size = options->step_size;
    cfg.steps = options->steps;
    cfg.batch_size = options->batch_size;
    cfg.codebook_size = options->codebook_size;
    cfg.motif_codebook_size = options->motif_codebook_size;
    cfg.adapter_dim = options->adapter_dim;
    cfg.normalize_embed_term = options->normalize_embed_term != 0;

    std::vector<moltok::Molecule> corpus;
    for (const auto& rec : moltok::read_corpus(corpus_path)) {
      try {
        corpus.push_back(moltok::parse_smiles(rec.smiles));
      } catch (const moltok::InputError& e) {
        throw moltok::InputError(std::string(corpus_path) + ":" +
                                 std::to_string(rec.line) + ": " + e.what());
      }
    }

    std::ofstream trace;
    if (trace_csv_path != nullptr) {
      trace.open(trace_csv_path, std::ios::binary);
      if (!trace)
        throw moltok::InputError(std::string("cannot write trace file '") +
                                 trace_csv_path + "'");
      trace << "step,term1,term2,term3,total\n";
    }
    auto on_step = [&](const moltok::TraceRow& row) {
      if (!trace.is_open()) return;
      trace << row.step << ',' << moltok::format_double(row.term1) << ','
            << moltok::format_double(row.term2) << ','
            << moltok::format_double(row.term3) << ','
            << moltok::format_double(row.total) << '\n';
    };
    const auto result = moltok::train_tokenizer(corpus, cfg, on_step);
    moltok::save_model(result.model, checkpoint_path);
    if (out_usage_summary != nullptr) {
      auto used = [](const std::vector<long>& hist) {
        long n = 0;
        for (long c : hist) n += c > 0 ? 1 : 0;
        return n;
      };
      const std::string summary =
          "codebook usage: atom " + std::to_string(used(result.atom_code_usage)) +
          "/" + std::to_string(result.atom_code_usage.size()) + " rows, motif " +
          std::to_string(used(result.motif_code_usage)) + "/" +
          std::to_string(result.motif_code_usage.size()) + " rows";
      *out_usage_summary = dup_string(summary);
    }
  });
}

mt_status mt_motifhallu_jsonl(const mt_molecule* mol, const mt_registry* reg,
                              const char* id, const char* smiles,
                              uint64_t seed, uint64_t ordinal,
                              char** out_jsonl) {
  if (mol == nullptr || reg == nullptr || id == nullptr || smiles == nullptr ||
      out_jsonl == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    std::string out;
    for (const auto& item :
         moltok::gen_motifhallu(mol->mol, reg->get(), id, smiles, seed, ordinal))
      out += moltok::qa_json(item) + "\n";
    *out_jsonl = dup_string(out);
  });
}

mt_status mt_augment_caption_json(const mt_molecule* mol,
                                  const mt_registry* reg, const char* smiles,
                                  const char* caption, int k_neg,
                                  uint64_t seed, uint64_t ordinal,
                                  char** out_json) {
  if (mol == nullptr || reg == nullptr || smiles == nullptr ||
      out_json == nullptr || k_neg < 0)
    return fail(MT_ERR_INPUT, "bad caption arguments");
  return guarded([&] {
    const auto rec = moltok::augment_caption(
        mol->mol, smiles, caption != nullptr ? caption : "", reg->get(), k_neg,
        seed, ordinal);
    *out_json = dup_string(moltok::caption_json(rec));
  });
}

mt_status mt_eval_hallu_files(const char* gold_path, const char* pred_path,
                              char** out_report_json, char** out_table) {
  if (gold_path == nullptr || pred_path == nullptr ||
      out_report_json == nullptr)
    return fail(MT_ERR_INPUT, "null argument");
  return guarded([&] {
    const auto gold = moltok::read_gold_jsonl(gold_path);
    const auto pred = moltok::read_predictions_jsonl(pred_path);
    const auto report = moltok::score(pred, gold);
    *out_report_json = dup_string(moltok::report_json(report));
    if (out_table != nullptr)
      *out_table = dup_string(moltok::report_table(report));
  });
}

}  // extern "C"
