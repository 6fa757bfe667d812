//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/vq.hpp"

#include <algorithm>
#include <cmath>

#include "moltok/brics.hpp"

namespace moltok {

Quantization quantize(const double* h, const Codebook& cb, int cls) {
  const auto [lo, hi] = cb.class_range(cls);
  int best = lo;
  double best_d2 = -1.0;
  for (int i = lo; i < hi; ++i) {
    double d2 = 0.0;
    for (int j = 0; j < kHidden; ++j) {
      const double d = h[j] - cb.embeddings.at(i, j);
      d2 += d * d;
    }
    if (best_d2 < 0.0 || d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return {best, std::sqrt(std::max(0.0, best_d2))};
}

std::vector<int> mask_atoms(int num_atoms, double rate, Rng& rng) {
  if (rate <= 0.0 || rate >= 1.0)
    throw InputError("mask rate must lie strictly between 0 and 1");
  const int want = static_cast<int>(std::ceil(rate * num_atoms));
  std::vector<int> all(num_atoms);
  for (int i = 0; i < num_atoms; ++i) all[i] = i;
  return rng.sample_without_replacement(std::move(all), want);
}

VqLossTerms vq_loss(Tape& tape, Tape::Var h, const std::vector<int>& classes,
                    Tape::Var codebook_var, const Codebook& codebook,
                    const Mat& targets, Tape::Var dec_w, Tape::Var dec_b,
                    const VqLossConfig& cfg) {
  const Mat& hv = tape.value(h);
  const int n = hv.rows;
  VqLossTerms out;
  out.codes.reserve(n);
  for (int i = 0; i < n; ++i)
    out.codes.push_back(
        quantize(&hv.d[static_cast<std::size_t>(i) * kHidden], codebook,
                 classes[i]).index);

  const bool train = cfg.mode == VqLossMode::Train;
  // Decoder input: quantized rows; in train mode their gradient also flows
  // into h (quantization as identity on the way back).
  Tape::Var e_for_dec = train
                            ? tape.gather_rows_st(codebook_var, out.codes, h)
                            : tape.gather_rows(codebook_var, out.codes);
  Tape::Var e_plain = tape.gather_rows(codebook_var, out.codes);
  Tape::Var vhat = tape.linear(e_for_dec, dec_w, dec_b);
  out.reconstruction = tape.cosine_power_loss(vhat, targets, cfg.gamma);

  out.embedding = tape.sq_diff(e_plain, h, 1.0 / n, /*grad_a=*/true,
                               /*grad_b=*/!train);
  const double commit_scale =
      cfg.normalize_embed_term ? cfg.beta / (2.0 * n) : cfg.beta / 2.0;
  out.commitment = tape.sq_diff(h, e_plain, commit_scale, /*grad_a=*/true,
                                /*grad_b=*/!train);
  out.total =
      tape.add_scalars({out.reconstruction, out.embedding, out.commitment});
  return out;
}

namespace {

struct MoleculeBatchItem {
  HierGraph hier;
  GraphTopo topo;
  std::vector<int> atom_node_rows;   // masked atom node indices
  std::vector<int> atom_classes;
  Mat atom_targets;
  std::vector<int> motif_node_rows;  // all supernodes
  Mat motif_targets;
};

MoleculeBatchItem prepare_item(const Molecule& mol) {
  MoleculeBatchItem item;
  const auto motifs = fragment(mol);
  item.hier = build_hier(mol, motifs);
  item.topo = make_topo(item.hier);
  const int n = mol.num_atoms();
  for (int m = 0; m <= item.hier.num_motifs; ++m)
    item.motif_node_rows.push_back(n + m);
  item.motif_targets = Mat(static_cast<int>(item.motif_node_rows.size()),
                           kMotifTargetDim);
  for (std::size_t i = 0; i < item.motif_node_rows.size(); ++i) {
    const int bucket =
        std::min<int>(kMotifTargetDim, static_cast<int>(motifs[i].atoms.size()));
    item.motif_targets.at(static_cast<int>(i), bucket - 1) = 1.0;
  }
  return item;
}

class Adam {
public:
  Adam(Model& model, double lr) : lr_(lr) {
    model.for_each_param([&](const std::string&, Mat& m) {
      m_.emplace_back(m.rows, m.cols);
      v_.emplace_back(m.rows, m.cols);
    });
  }

  void step(Model& model, const std::vector<Mat>& grads) {
    ++t_;
    const double bc1 = 1.0 - std::pow(0.9, t_);
    const double bc2 = 1.0 - std::pow(0.999, t_);
    std::size_t k = 0;
    model.for_each_param([&](const std::string&, Mat& p) {
      const Mat& g = grads[k];
      Mat& m = m_[k];
      Mat& v = v_[k];
      for (std::size_t i = 0; i < p.d.size(); ++i) {
        m.d[i] = 0.9 * m.d[i] + 0.1 * g.d[i];
        v.d[i] = 0.999 * v.d[i] + 0.001 * g.d[i] * g.d[i];
        const double mhat = m.d[i] / bc1;
        const double vhat = v.d[i] / bc2;
        p.d[i] -= lr_ * mhat / (std::sqrt(vhat) + 1e-8);
      }
      ++k;
    });
  }

private:
  double lr_;
  long t_ = 0;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
};

}  // namespace

TrainResult train_tokenizer(const std::vector<Molecule>& corpus,
                            const TrainConfig& cfg,
                            const std::function<void(const TraceRow&)>& on_step) {
  if (corpus.empty()) throw InputError("empty training corpus");
  TrainResult result;
  result.model = Model::seeded(cfg.seed, cfg.adapter_dim, cfg.codebook_size,
                               cfg.motif_codebook_size);
  Model& model = result.model;

  std::vector<MoleculeBatchItem> items;
  items.reserve(corpus.size());
  for (const Molecule& mol : corpus) items.push_back(prepare_item(mol));

  Adam adam(model, cfg.step_size);
  std::vector<Mat> grads;
  model.for_each_param(
      [&](const std::string&, Mat& m) { grads.emplace_back(m.rows, m.cols); });
  result.atom_code_usage.assign(cfg.codebook_size, 0);
  result.motif_code_usage.assign(cfg.motif_codebook_size, 0);

  std::size_t cursor = 0;
  for (int step = 0; step < cfg.steps; ++step) {
    for (Mat& g : grads) g.d.assign(g.d.size(), 0.0);
    TraceRow row;
    row.step = step;

    const int batch = std::min<int>(cfg.batch_size, static_cast<int>(items.size()));
    for (int bi = 0; bi < batch; ++bi) {
      const std::size_t mi = cursor;
      cursor = (cursor + 1) % items.size();
      MoleculeBatchItem& item = items[mi];
      const Molecule& mol = item.hier.base;

      // Mask selection is a pure function of (seed, step, molecule index).
      Rng mask_rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL *
                               (static_cast<std::uint64_t>(step) * items.size() +
                                mi + 1)));
      std::vector<int> masked = mask_atoms(mol.num_atoms(), cfg.mask_rate, mask_rng);
      std::sort(masked.begin(), masked.end());
      std::set<int> masked_set(masked.begin(), masked.end());

      item.atom_node_rows = masked;
      item.atom_classes.clear();
      item.atom_targets = Mat(static_cast<int>(masked.size()), kAtomTargetDim);
      for (std::size_t i = 0; i < masked.size(); ++i) {
        const Atom& a = mol.atoms[masked[i]];
        item.atom_classes.push_back(static_cast<int>(atom_class(a.element)));
        item.atom_targets.at(static_cast<int>(i), atom_type_row(a.element)) = 1.0;
      }

      Tape tape;
      EncoderBind enc = bind_encoder(tape, model.enc);
      Tape::Var cb_atom = tape.leaf(model.atom_cb.embeddings);
      Tape::Var cb_motif = tape.leaf(model.motif_cb.embeddings);
      Tape::Var dec_aw = tape.leaf(model.dec_atom.w);
      Tape::Var dec_ab = tape.leaf(model.dec_atom.b);
      Tape::Var dec_mw = tape.leaf(model.dec_motif.w);
      Tape::Var dec_mb = tape.leaf(model.dec_motif.b);

      Tape::Var h = gin_forward(tape, item.hier, enc, item.topo, masked_set);
      VqLossConfig loss_cfg{cfg.gamma, cfg.beta, cfg.normalize_embed_term,
                       VqLossMode::Train};

      Tape::Var h_atoms = tape.select_rows(h, item.atom_node_rows);
      VqLossTerms atom_terms =
          vq_loss(tape, h_atoms, item.atom_classes, cb_atom, model.atom_cb,
                   item.atom_targets, dec_aw, dec_ab, loss_cfg);

      std::vector<int> motif_classes(item.motif_node_rows.size(), 0);
      Tape::Var h_motifs = tape.select_rows(h, item.motif_node_rows);
      VqLossTerms motif_terms =
          vq_loss(tape, h_motifs, motif_classes, cb_motif, model.motif_cb,
                   item.motif_targets, dec_mw, dec_mb, loss_cfg);
      for (int code : atom_terms.codes) ++result.atom_code_usage[code];
      for (int code : motif_terms.codes) ++result.motif_code_usage[code];

      Tape::Var mol_loss = tape.add_scalars({atom_terms.total, motif_terms.total});
      Tape::Var scaled = tape.scale(mol_loss, 1.0 / batch);
      tape.backward(scaled);

      row.term1 += (tape.value(atom_terms.reconstruction).at(0, 0) +
                    tape.value(motif_terms.reconstruction).at(0, 0)) / batch;
      row.term2 += (tape.value(atom_terms.embedding).at(0, 0) +
                    tape.value(motif_terms.embedding).at(0, 0)) / batch;
      row.term3 += (tape.value(atom_terms.commitment).at(0, 0) +
                    tape.value(motif_terms.commitment).at(0, 0)) / batch;
      row.total += tape.value(scaled).at(0, 0);

      // Fold this molecule's gradients into the batch accumulators, in
      // for_each_param order (encoder tensors first, adapters last).
      std::size_t k = 0;
      EncoderParams enc_grads;
      accumulate_encoder_grads(tape, enc, enc_grads);
      auto add = [&](const Mat& src) {
        for (std::size_t i = 0; i < src.d.size(); ++i) grads[k].d[i] += src.d[i];
        ++k;
      };
      add(enc_grads.atom_type);
      add(enc_grads.charge);
      add(enc_grads.node_kind);
      for (int l = 0; l < kLayers; ++l) {
        add(enc_grads.edge[l]);
        add(enc_grads.w1[l]);
        add(enc_grads.b1[l]);
        add(enc_grads.w2[l]);
        add(enc_grads.b2[l]);
        add(enc_grads.eps[l]);
      }
      add(tape.grad(cb_atom));
      add(tape.grad(cb_motif));
      add(tape.grad(dec_aw));
      add(tape.grad(dec_ab));
      add(tape.grad(dec_mw));
      add(tape.grad(dec_mb));
      // Adapters take no gradient from the tokenizer objective.
      k += 6;
      if (k != grads.size())
        throw NumericError("parameter walk out of sync with gradient slots");
    }

    if (!std::isfinite(row.total))
      throw NumericError("training diverged at step " + std::to_string(step));
    result.trace.push_back(row);
    if (on_step) on_step(row);
    adam.step(model, grads);
  }
  return result;
}

}  // namespace moltok
