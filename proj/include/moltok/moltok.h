/*
 * Project moltok - Copyright 2026 The moltok Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the moltok shared library. All functions return mt_status;
 * MT_OK means success, anything else leaves a message in mt_last_error()
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with mt_string_free(). Handles are opaque and freed
 * with their matching *_free function. All operations on distinct handles
 * are thread-safe; a handle itself is immutable after creation.
 */

#ifndef MOLTOK_MOLTOK_H
#define MOLTOK_MOLTOK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mt_status {
  MT_OK = 0,
  MT_ERR_INPUT = 1,  /* malformed input, contract violation */
  MT_ERR_NUMERIC = 2 /* eigensolver failure, diverged training */
} mt_status;

const char* mt_version(void);
const char* mt_last_error(void);
void mt_string_free(char* s);

/* ---- molecules ---------------------------------------------------- */

typedef struct mt_molecule mt_molecule;

mt_status mt_molecule_parse(const char* smiles, mt_molecule** out);
void mt_molecule_free(mt_molecule* mol);
int mt_molecule_num_atoms(const mt_molecule* mol);
int mt_molecule_num_bonds(const mt_molecule* mol);
/* Hydrogen count of one atom; -1 on a bad index. */
int mt_molecule_implicit_hydrogens(const mt_molecule* mol, int atom);
/* Full atom/bond dump as one JSON object. */
mt_status mt_molecule_dump_json(const mt_molecule* mol, const char* id,
                                char** out_json);

/* ---- functional-group registry ------------------------------------ */

typedef struct mt_registry mt_registry;

mt_status mt_registry_load(const char* path, mt_registry** out);
mt_status mt_registry_builtin(mt_registry** out);
void mt_registry_free(mt_registry* reg);
int mt_registry_size(const mt_registry* reg);
const char* mt_registry_name(const mt_registry* reg, int index);
const char* mt_registry_smarts(const mt_registry* reg, int index);

/* Name -> count map as one JSON object (zero counts omitted). */
mt_status mt_detect_groups_json(const mt_molecule* mol, const mt_registry* reg,
                                const char* id, char** out_json);

/* ---- fragmentation and hierarchy ----------------------------------- */

/* One line: smiles<TAB>k<TAB>semicolon-joined atom index lists. */
mt_status mt_fragment_line(const mt_molecule* mol, char** out_line);
/* Counts only, or the full node/edge/positional-encoding dump. */
mt_status mt_hier_json(const mt_molecule* mol, const char* id, int dump,
                       char** out_json);

/* ---- encoder / tokenizer model ------------------------------------- */

typedef struct mt_model mt_model;

mt_status mt_model_create(uint64_t seed, int adapter_dim, mt_model** out);
mt_status mt_model_load(const char* path, mt_model** out);
mt_status mt_model_save(const mt_model* model, const char* path);
void mt_model_free(mt_model* model);

/* mode is "node" or "hight"; emits one JSON line per token. */
mt_status mt_tokenize_jsonl(const mt_model* model, const mt_molecule* mol,
                            const char* mode, const char* mol_id,
                            char** out_jsonl);

typedef struct mt_train_options {
  uint64_t seed;
  double gamma;
  double beta;
  double mask_rate;
  double step_size;
  int steps;
  int batch_size;
  int codebook_size;
  int motif_codebook_size;
  int adapter_dim;
  int normalize_embed_term; /* nonzero applies 1/n to the commitment term */
} mt_train_options;

mt_train_options mt_train_options_default(void);

/* Trains on a corpus file (one SMILES per line), writes the checkpoint and
 * a CSV trace (step,term1,term2,term3,total). trace_csv_path may be NULL.
 * out_usage_summary (may be NULL) receives a one-line codebook usage
 * histogram summary. */
mt_status mt_train_tokenizer(const char* corpus_path,
                             const mt_train_options* options,
                             const char* checkpoint_path,
                             const char* trace_csv_path,
                             char** out_usage_summary);

/* ---- benchmark generation and scoring ------------------------------ */

/* Yes/No items for one molecule as JSON lines. */
mt_status mt_motifhallu_jsonl(const mt_molecule* mol, const mt_registry* reg,
                              const char* id, const char* smiles,
                              uint64_t seed, uint64_t ordinal,
                              char** out_jsonl);

/* One JSON object with the augmented caption. */
mt_status mt_augment_caption_json(const mt_molecule* mol,
                                  const mt_registry* reg, const char* smiles,
                                  const char* caption, int k_neg,
                                  uint64_t seed, uint64_t ordinal,
                                  char** out_json);

/* Scores a predictions file against a gold file (both JSON lines with
 * "id"/"answer", predictions optionally "score"). Writes the machine
 * report to out_report_json and the human table to out_table. */
mt_status mt_eval_hallu_files(const char* gold_path, const char* pred_path,
                              char** out_report_json, char** out_table);

#ifdef __cplusplus
}
#endif

#endif /* MOLTOK_MOLTOK_H */
