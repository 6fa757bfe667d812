//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_MODEL_HPP
#define MOLTOK_MODEL_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "moltok/encoder.hpp"

namespace moltok {

// Reconstruction-target vocabularies.
inline constexpr int kAtomTargetDim = 11;   // same order as atom_type_row
inline constexpr int kMotifTargetDim = 32;  // atom-count buckets 1..32, clamped

enum class CodebookLevel : std::uint8_t { Atom = 0, Motif = 1 };

// Element class used to partition the atom-level codebook.
enum class AtomClass : std::uint8_t { Carbon = 0, Nitrogen, Oxygen, Other };
AtomClass atom_class(int element);

struct Codebook {
  Mat embeddings;                                 // K x 300
  std::vector<std::pair<int, int>> ranges;        // per class, [lo, hi)
  CodebookLevel level = CodebookLevel::Atom;

  int size() const { return embeddings.rows; }
  std::pair<int, int> class_range(int cls) const;
};

struct Linear {
  Mat w;  // in x out
  Mat b;  // 1 x out
};

struct Model {
  EncoderParams enc;
  Codebook atom_cb;
  Codebook motif_cb;
  Linear dec_atom;   // 300 -> kAtomTargetDim
  Linear dec_motif;  // 300 -> kMotifTargetDim
  Linear adapter_n;  // 308 -> adapter_dim
  Linear adapter_m;
  Linear adapter_g;
  int adapter_dim = kHidden + kPeDim;

  // Deterministic seeded initialization: encoder and adapter weights
  // uniform in +-1/sqrt(fan-in), codebooks normal / sqrt(300), eps zero.
  static Model seeded(std::uint64_t seed, int adapter_dim = kHidden + kPeDim,
                      int atom_codebook = 512, int motif_codebook = 128);

  // Fixed-order traversal of every parameter tensor (optimizer state and
  // checkpoints rely on the order being stable).
  void for_each_param(const std::function<void(const std::string&, Mat&)>& fn);
  void for_each_param(
      const std::function<void(const std::string&, const Mat&)>& fn) const;
};

// Versioned little-endian binary container.
void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

}  // namespace moltok

#endif  // MOLTOK_MODEL_HPP
