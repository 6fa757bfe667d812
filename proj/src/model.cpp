//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/model.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "moltok/rng.hpp"

namespace moltok {

namespace {

constexpr char kMagic[4] = {'M', 'T', 'O', 'K'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > buf.size()) throw InputError("truncated model file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
    pos += 8;
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s = buf.substr(pos, n);
    pos += n;
    return s;
  }
};

void fill_uniform(Mat& m, Rng& rng, double bound) {
  for (double& v : m.d) v = rng.uniform(-bound, bound);
}

void fill_normal(Mat& m, Rng& rng, double scale) {
  for (double& v : m.d) v = rng.normal() * scale;
}

}  // namespace

AtomClass atom_class(int element) {
  switch (element) {
    case 6: return AtomClass::Carbon;
    case 7: return AtomClass::Nitrogen;
    case 8: return AtomClass::Oxygen;
    default: return AtomClass::Other;
  }
}

std::pair<int, int> Codebook::class_range(int cls) const {
  if (cls < 0 || cls >= static_cast<int>(ranges.size()))
    throw InputError("unknown codebook class " + std::to_string(cls));
  return ranges[cls];
}

Model Model::seeded(std::uint64_t seed, int adapter_dim, int atom_codebook,
                    int motif_codebook) {
  Model m;
  m.adapter_dim = adapter_dim;
  Rng rng(seed);
  const double enc_bound = 1.0 / std::sqrt(static_cast<double>(kHidden));

  fill_uniform(m.enc.atom_type, rng, enc_bound);
  fill_uniform(m.enc.charge, rng, enc_bound);
  fill_uniform(m.enc.node_kind, rng, enc_bound);
  for (int l = 0; l < kLayers; ++l) {
    fill_uniform(m.enc.edge[l], rng, enc_bound);
    fill_uniform(m.enc.w1[l], rng, enc_bound);
    fill_uniform(m.enc.b1[l], rng, enc_bound);
    fill_uniform(m.enc.w2[l], rng, enc_bound);
    fill_uniform(m.enc.b2[l], rng, enc_bound);
    // eps stays zero
  }

  const double cb_scale = 1.0 / std::sqrt(static_cast<double>(kHidden));
  m.atom_cb.embeddings = Mat(atom_codebook, kHidden);
  fill_normal(m.atom_cb.embeddings, rng, cb_scale);
  m.atom_cb.level = CodebookLevel::Atom;
  const int quarter = atom_codebook / 4;
  m.atom_cb.ranges = {{0, quarter},
                      {quarter, 2 * quarter},
                      {2 * quarter, 3 * quarter},
                      {3 * quarter, atom_codebook}};
  m.motif_cb.embeddings = Mat(motif_codebook, kHidden);
  fill_normal(m.motif_cb.embeddings, rng, cb_scale);
  m.motif_cb.level = CodebookLevel::Motif;
  m.motif_cb.ranges = {{0, motif_codebook}};

  m.dec_atom.w = Mat(kHidden, kAtomTargetDim);
  m.dec_atom.b = Mat(1, kAtomTargetDim);
  m.dec_motif.w = Mat(kHidden, kMotifTargetDim);
  m.dec_motif.b = Mat(1, kMotifTargetDim);
  fill_uniform(m.dec_atom.w, rng, enc_bound);
  fill_uniform(m.dec_atom.b, rng, enc_bound);
  fill_uniform(m.dec_motif.w, rng, enc_bound);
  fill_uniform(m.dec_motif.b, rng, enc_bound);

  const int d_in = kHidden + kPeDim;
  const double ad_bound = 1.0 / std::sqrt(static_cast<double>(d_in));
  for (Linear* ad : {&m.adapter_n, &m.adapter_m, &m.adapter_g}) {
    ad->w = Mat(d_in, adapter_dim);
    ad->b = Mat(1, adapter_dim);
    fill_uniform(ad->w, rng, ad_bound);
    fill_uniform(ad->b, rng, ad_bound);
  }
  return m;
}

void Model::for_each_param(
    const std::function<void(const std::string&, Mat&)>& fn) {
  fn("enc.atom_type", enc.atom_type);
  fn("enc.charge", enc.charge);
  fn("enc.node_kind", enc.node_kind);
  for (int l = 0; l < kLayers; ++l) {
    const std::string p = "enc.layer" + std::to_string(l) + ".";
    fn(p + "edge", enc.edge[l]);
    fn(p + "w1", enc.w1[l]);
    fn(p + "b1", enc.b1[l]);
    fn(p + "w2", enc.w2[l]);
    fn(p + "b2", enc.b2[l]);
    fn(p + "eps", enc.eps[l]);
  }
  fn("cb.atom", atom_cb.embeddings);
  fn("cb.motif", motif_cb.embeddings);
  fn("dec.atom.w", dec_atom.w);
  fn("dec.atom.b", dec_atom.b);
  fn("dec.motif.w", dec_motif.w);
  fn("dec.motif.b", dec_motif.b);
  fn("adapter.n.w", adapter_n.w);
  fn("adapter.n.b", adapter_n.b);
  fn("adapter.m.w", adapter_m.w);
  fn("adapter.m.b", adapter_m.b);
  fn("adapter.g.w", adapter_g.w);
  fn("adapter.g.b", adapter_g.b);
}

void Model::for_each_param(
    const std::function<void(const std::string&, const Mat&)>& fn) const {
  const_cast<Model*>(this)->for_each_param(
      [&](const std::string& name, Mat& m) { fn(name, m); });
}

void save_model(const Model& m, const std::string& path) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(m.adapter_dim));
  put_u32(out, static_cast<std::uint32_t>(m.atom_cb.size()));
  put_u32(out, static_cast<std::uint32_t>(m.motif_cb.size()));

  std::uint32_t count = 0;
  m.for_each_param([&](const std::string&, const Mat&) { ++count; });
  put_u32(out, count);
  m.for_each_param([&](const std::string& name, const Mat& mat) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out += name;
    put_u32(out, static_cast<std::uint32_t>(mat.rows));
    put_u32(out, static_cast<std::uint32_t>(mat.cols));
    for (double v : mat.d) put_f64(out, v);
  });

  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write model file '" + path + "'");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw InputError("short write to model file '" + path + "'");
}

Model load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open model file '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
  Reader r{buf};
  if (r.str(4) != std::string(kMagic, 4))
    throw InputError("bad magic in model file '" + path + "'");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw InputError("unsupported model version " + std::to_string(version));
  const int adapter_dim = static_cast<int>(r.u32());
  const int atom_k = static_cast<int>(r.u32());
  const int motif_k = static_cast<int>(r.u32());

  Model m = Model::seeded(0, adapter_dim, atom_k, motif_k);
  const std::uint32_t count = r.u32();
  std::uint32_t seen = 0;
  std::vector<std::pair<std::string, Mat*>> slots;
  m.for_each_param([&](const std::string& name, Mat& mat) {
    slots.emplace_back(name, &mat);
  });
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t name_len = r.u32();
    const std::string name = r.str(name_len);
    const int rows = static_cast<int>(r.u32());
    const int cols = static_cast<int>(r.u32());
    Mat* target = nullptr;
    for (auto& [n, p] : slots)
      if (n == name) target = p;
    if (target == nullptr)
      throw InputError("unknown tensor '" + name + "' in model file");
    if (target->rows != rows || target->cols != cols)
      throw InputError("shape mismatch for tensor '" + name + "'");
    for (double& v : target->d) v = r.f64();
    ++seen;
  }
  if (seen != count) throw InputError("tensor count mismatch in model file");
  return m;
}

}  // namespace moltok
