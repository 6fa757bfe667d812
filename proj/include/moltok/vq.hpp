//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_VQ_HPP
#define MOLTOK_VQ_HPP

#include <functional>
#include <optional>
#include <vector>

#include "moltok/model.hpp"
#include "moltok/rng.hpp"

namespace moltok {

struct Quantization {
  int index = 0;
  double distance = 0.0;  // Euclidean
};

// Nearest codebook row within the class partition; ties go to the lowest
// index. `h` must have kHidden entries.
Quantization quantize(const double* h, const Codebook& cb, int cls);

// ceil(rate * n) distinct atom indices drawn with the seeded generator.
std::vector<int> mask_atoms(int num_atoms, double rate, Rng& rng);

// How the loss treats the stop-gradient wiring. Train follows the published
// rule: the reconstruction term reaches the encoder through the
// straight-through estimator, the embedding term updates only the codebook,
// the commitment term only the encoder. Smooth drops the stop-gradients and
// the straight-through path entirely (a plain differentiable function used
// by the finite-difference checks; codes stay fixed either way).
enum class VqLossMode { Train, Smooth };

struct VqLossConfig {
  double gamma = 2.0;
  double beta = 0.25;
  bool normalize_embed_term = false;  // opt-in 1/n on the commitment sum
  VqLossMode mode = VqLossMode::Train;
};

struct VqLossTerms {
  Tape::Var reconstruction;  // (1/n) sum (1 - cos)^gamma
  Tape::Var embedding;       // (1/n) sum ||sg[h] - e||^2
  Tape::Var commitment;      // (beta/2) sum ||sg[e] - h||^2
  Tape::Var total;
  std::vector<int> codes;
};

// Builds the three-term reconstruction loss over a batch of node embeddings
// (rows of `h`), with per-row class indices into `codebook` and one-hot
// target rows. Codes are chosen by nearest neighbor inside each class range.
VqLossTerms vq_loss(Tape& tape, Tape::Var h, const std::vector<int>& classes,
                    Tape::Var codebook_var, const Codebook& codebook,
                    const Mat& targets, Tape::Var dec_w, Tape::Var dec_b,
                    const VqLossConfig& cfg);

struct TrainConfig {
  double gamma = 2.0;
  double beta = 0.25;
  double mask_rate = 0.15;
  double step_size = 1e-3;
  int steps = 200;
  int batch_size = 8;
  std::uint64_t seed = 0;
  int codebook_size = 512;
  int motif_codebook_size = 128;
  int adapter_dim = kHidden + kPeDim;
  bool normalize_embed_term = false;
};

struct TraceRow {
  int step = 0;
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;
  double total = 0.0;
};

struct TrainResult {
  Model model;
  std::vector<TraceRow> trace;
  // Quantization counts per code row over the whole run. No dead-code
  // resuscitation happens; the histogram is the diagnostic.
  std::vector<long> atom_code_usage;
  std::vector<long> motif_code_usage;
};

// Masked-attribute self-supervision over the supernode-augmented graphs:
// atom-level targets are one-hot atom types of the masked atoms, motif-level
// targets one-hot atom-count buckets of every supernode. Adam updates in a
// fixed order; bitwise reproducible given corpus order, seed, and config.
// Throws NumericError on divergence (rows emitted so far are in the
// exception path via on_step).
TrainResult train_tokenizer(const std::vector<Molecule>& corpus,
                            const TrainConfig& cfg,
                            const std::function<void(const TraceRow&)>& on_step = {});

}  // namespace moltok

#endif  // MOLTOK_VQ_HPP
