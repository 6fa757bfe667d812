//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/autodiff.hpp"

#include <cmath>

namespace moltok {

int Tape::push(Mat value, std::function<void(Tape&)> back) {
  Node node;
  node.grad = Mat(value.rows, value.cols);
  node.value = std::move(value);
  node.back = std::move(back);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

Tape::Var Tape::leaf(const Mat& value) {
  const int id = push(value, {});
  return {id, value.rows, value.cols};
}

Tape::Var Tape::linear(Var x, Var w, Var b) {
  const Mat& xv = value(x);
  const Mat& wv = value(w);
  const Mat& bv = value(b);
  Mat out(xv.rows, wv.cols);
  for (int i = 0; i < xv.rows; ++i) {
    for (int k = 0; k < xv.cols; ++k) {
      const double xik = xv.at(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < wv.cols; ++j) out.at(i, j) += xik * wv.at(k, j);
    }
    for (int j = 0; j < wv.cols; ++j) out.at(i, j) += bv.at(0, j);
  }
  const int id = push(std::move(out), {});
  Var self{id, xv.rows, wv.cols};
  nodes_[id].back = [self, x, w, b](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    const Mat& xv2 = t.value(x);
    const Mat& wv2 = t.value(w);
    Mat& gx = t.grad_mut(x.id);
    Mat& gw = t.grad_mut(w.id);
    Mat& gb = t.grad_mut(b.id);
    for (int i = 0; i < g.rows; ++i) {
      for (int j = 0; j < g.cols; ++j) {
        const double gij = g.at(i, j);
        if (gij == 0.0) continue;
        gb.at(0, j) += gij;
        for (int k = 0; k < xv2.cols; ++k) {
          gx.at(i, k) += gij * wv2.at(k, j);
          gw.at(k, j) += gij * xv2.at(i, k);
        }
      }
    }
  };
  return self;
}

Tape::Var Tape::relu(Var x) {
  const Mat& xv = value(x);
  Mat out = xv;
  for (double& v : out.d) v = v > 0.0 ? v : 0.0;
  const int id = push(std::move(out), {});
  Var self{id, xv.rows, xv.cols};
  nodes_[id].back = [self, x](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    const Mat& xv2 = t.value(x);
    Mat& gx = t.grad_mut(x.id);
    for (std::size_t i = 0; i < g.d.size(); ++i)
      if (xv2.d[i] > 0.0) gx.d[i] += g.d[i];
  };
  return self;
}

Tape::Var Tape::add(Var a, Var b) {
  const Mat& av = value(a);
  const Mat& bv = value(b);
  Mat out = av;
  for (std::size_t i = 0; i < out.d.size(); ++i) out.d[i] += bv.d[i];
  const int id = push(std::move(out), {});
  Var self{id, av.rows, av.cols};
  nodes_[id].back = [self, a, b](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& ga = t.grad_mut(a.id);
    Mat& gb = t.grad_mut(b.id);
    for (std::size_t i = 0; i < g.d.size(); ++i) {
      ga.d[i] += g.d[i];
      gb.d[i] += g.d[i];
    }
  };
  return self;
}

Tape::Var Tape::scale(Var a, double s) {
  Mat out = value(a);
  for (double& v : out.d) v *= s;
  const int rows = out.rows;
  const int cols = out.cols;
  const int id = push(std::move(out), {});
  Var self{id, rows, cols};
  nodes_[id].back = [self, a, s](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& ga = t.grad_mut(a.id);
    for (std::size_t i = 0; i < g.d.size(); ++i) ga.d[i] += s * g.d[i];
  };
  return self;
}

Tape::Var Tape::select_rows(Var x, std::vector<int> rows) {
  const Mat& xv = value(x);
  Mat out(static_cast<int>(rows.size()), xv.cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < xv.cols; ++j) out.at(static_cast<int>(i), j) = xv.at(rows[i], j);
  const int id = push(std::move(out), {});
  Var self{id, static_cast<int>(rows.size()), xv.cols};
  nodes_[id].back = [self, x, rows = std::move(rows)](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& gx = t.grad_mut(x.id);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < g.cols; ++j)
        gx.at(rows[i], j) += g.at(static_cast<int>(i), j);
  };
  return self;
}

Tape::Var Tape::concat_cols(Var x, const Mat& right) {
  const Mat& xv = value(x);
  Mat out(xv.rows, xv.cols + right.cols);
  for (int i = 0; i < xv.rows; ++i) {
    for (int j = 0; j < xv.cols; ++j) out.at(i, j) = xv.at(i, j);
    for (int j = 0; j < right.cols; ++j) out.at(i, xv.cols + j) = right.at(i, j);
  }
  const int id = push(std::move(out), {});
  Var self{id, xv.rows, xv.cols + right.cols};
  const int keep = xv.cols;
  nodes_[id].back = [self, x, keep](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& gx = t.grad_mut(x.id);
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < keep; ++j) gx.at(i, j) += g.at(i, j);
  };
  return self;
}

Tape::Var Tape::mean_rows(Var x) {
  const Mat& xv = value(x);
  if (xv.rows == 0) throw InputError("mean over an empty node subset");
  Mat out(1, xv.cols);
  for (int i = 0; i < xv.rows; ++i)
    for (int j = 0; j < xv.cols; ++j) out.at(0, j) += xv.at(i, j);
  for (int j = 0; j < xv.cols; ++j) out.at(0, j) /= xv.rows;
  const int id = push(std::move(out), {});
  Var self{id, 1, xv.cols};
  const double inv = 1.0 / xv.rows;
  const int nrows = xv.rows;
  nodes_[id].back = [self, x, inv, nrows](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& gx = t.grad_mut(x.id);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < g.cols; ++j) gx.at(i, j) += inv * g.at(0, j);
  };
  return self;
}

Tape::Var Tape::gather_rows(Var table, std::vector<int> idx) {
  const Mat& tv = value(table);
  Mat out(static_cast<int>(idx.size()), tv.cols);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < tv.cols; ++j) out.at(static_cast<int>(i), j) = tv.at(idx[i], j);
  const int id = push(std::move(out), {});
  Var self{id, static_cast<int>(idx.size()), tv.cols};
  nodes_[id].back = [self, table, idx = std::move(idx)](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& gt = t.grad_mut(table.id);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (int j = 0; j < g.cols; ++j)
        gt.at(idx[i], j) += g.at(static_cast<int>(i), j);
  };
  return self;
}

Tape::Var Tape::gather_rows_st(Var table, std::vector<int> idx, Var h) {
  const Mat& tv = value(table);
  Mat out(static_cast<int>(idx.size()), tv.cols);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < tv.cols; ++j) out.at(static_cast<int>(i), j) = tv.at(idx[i], j);
  const int id = push(std::move(out), {});
  Var self{id, static_cast<int>(idx.size()), tv.cols};
  nodes_[id].back = [self, table, h, idx = std::move(idx)](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    Mat& gt = t.grad_mut(table.id);
    Mat& gh = t.grad_mut(h.id);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (int j = 0; j < g.cols; ++j) {
        gt.at(idx[i], j) += g.at(static_cast<int>(i), j);
        gh.at(static_cast<int>(i), j) += g.at(static_cast<int>(i), j);
      }
  };
  return self;
}

Tape::Var Tape::embed_sum(Var table_a, std::vector<int> idx_a, Var table_b,
                          std::vector<int> idx_b, Var table_c,
                          std::vector<int> idx_c) {
  const Mat& av = value(table_a);
  const int n = static_cast<int>(idx_a.size());
  Mat out(n, av.cols);
  auto accumulate = [&](const Mat& tv, const std::vector<int>& idx) {
    for (int i = 0; i < n; ++i) {
      if (idx[i] < 0) continue;
      for (int j = 0; j < tv.cols; ++j) out.at(i, j) += tv.at(idx[i], j);
    }
  };
  accumulate(av, idx_a);
  accumulate(value(table_b), idx_b);
  accumulate(value(table_c), idx_c);
  const int id = push(std::move(out), {});
  Var self{id, n, av.cols};
  nodes_[id].back = [self, table_a, table_b, table_c, idx_a = std::move(idx_a),
                     idx_b = std::move(idx_b), idx_c = std::move(idx_c)](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    auto scatter = [&](Var table, const std::vector<int>& idx) {
      Mat& gt = t.grad_mut(table.id);
      for (int i = 0; i < g.rows; ++i) {
        if (idx[i] < 0) continue;
        for (int j = 0; j < g.cols; ++j) gt.at(idx[i], j) += g.at(i, j);
      }
    };
    scatter(table_a, idx_a);
    scatter(table_b, idx_b);
    scatter(table_c, idx_c);
  };
  return self;
}

Tape::Var Tape::gin_aggregate(Var h, Var eps, Var edges, const GraphTopo& topo) {
  const Mat& hv = value(h);
  const Mat& ev = value(edges);
  const double e = value(eps).at(0, 0);
  Mat out(hv.rows, hv.cols);
  for (int u = 0; u < topo.n; ++u) {
    for (int j = 0; j < hv.cols; ++j) out.at(u, j) = (1.0 + e) * hv.at(u, j);
    for (const auto& [v, kind] : topo.nbr[u])
      for (int j = 0; j < hv.cols; ++j)
        out.at(u, j) += hv.at(v, j) + ev.at(kind, j);
  }
  const int id = push(std::move(out), {});
  Var self{id, hv.rows, hv.cols};
  const auto topo_ptr = std::make_shared<GraphTopo>(topo);
  nodes_[id].back = [self, h, eps, edges, topo_ptr](Tape& t) {
    const Mat& g = t.nodes_[self.id].grad;
    const Mat& hv2 = t.value(h);
    const double e2 = t.value(eps).at(0, 0);
    Mat& gh = t.grad_mut(h.id);
    Mat& ge = t.grad_mut(edges.id);
    Mat& geps = t.grad_mut(eps.id);
    double eps_grad = 0.0;
    for (int u = 0; u < topo_ptr->n; ++u) {
      for (int j = 0; j < g.cols; ++j) {
        const double gu = g.at(u, j);
        if (gu == 0.0) continue;
        gh.at(u, j) += (1.0 + e2) * gu;
        eps_grad += gu * hv2.at(u, j);
      }
      for (const auto& [v, kind] : topo_ptr->nbr[u])
        for (int j = 0; j < g.cols; ++j) {
          const double gu = g.at(u, j);
          gh.at(v, j) += gu;
          ge.at(kind, j) += gu;
        }
    }
    geps.at(0, 0) += eps_grad;
  };
  return self;
}

Tape::Var Tape::sq_diff(Var a, Var b, double scale, bool grad_a, bool grad_b) {
  const Mat& av = value(a);
  const Mat& bv = value(b);
  double s = 0.0;
  for (std::size_t i = 0; i < av.d.size(); ++i) {
    const double d = av.d[i] - bv.d[i];
    s += d * d;
  }
  Mat out(1, 1);
  out.at(0, 0) = scale * s;
  const int id = push(std::move(out), {});
  Var self{id, 1, 1};
  nodes_[id].back = [self, a, b, scale, grad_a, grad_b](Tape& t) {
    const double g = t.nodes_[self.id].grad.at(0, 0);
    if (g == 0.0) return;
    const Mat& av2 = t.value(a);
    const Mat& bv2 = t.value(b);
    if (grad_a) {
      Mat& ga = t.grad_mut(a.id);
      for (std::size_t i = 0; i < av2.d.size(); ++i)
        ga.d[i] += g * scale * 2.0 * (av2.d[i] - bv2.d[i]);
    }
    if (grad_b) {
      Mat& gb = t.grad_mut(b.id);
      for (std::size_t i = 0; i < av2.d.size(); ++i)
        gb.d[i] += g * scale * 2.0 * (bv2.d[i] - av2.d[i]);
    }
  };
  return self;
}

Tape::Var Tape::cosine_power_loss(Var vhat, const Mat& targets, double gamma) {
  const Mat& pv = value(vhat);
  const int n = pv.rows;
  const int m = pv.cols;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double dot = 0.0, np = 0.0, nt = 0.0;
    for (int j = 0; j < m; ++j) {
      dot += pv.at(i, j) * targets.at(i, j);
      np += pv.at(i, j) * pv.at(i, j);
      nt += targets.at(i, j) * targets.at(i, j);
    }
    double cosv = 0.0;  // degenerate rows score the maximal value 1
    if (np > 0.0 && nt > 0.0) cosv = dot / (std::sqrt(np) * std::sqrt(nt));
    total += std::pow(1.0 - cosv, gamma);
  }
  Mat out(1, 1);
  out.at(0, 0) = total / n;
  const int id = push(std::move(out), {});
  Var self{id, 1, 1};
  nodes_[id].back = [self, vhat, targets, gamma, n, m](Tape& t) {
    const double g = t.nodes_[self.id].grad.at(0, 0);
    if (g == 0.0) return;
    const Mat& pv2 = t.value(vhat);
    Mat& gp = t.grad_mut(vhat.id);
    for (int i = 0; i < n; ++i) {
      double dot = 0.0, np = 0.0, nt = 0.0;
      for (int j = 0; j < m; ++j) {
        dot += pv2.at(i, j) * targets.at(i, j);
        np += pv2.at(i, j) * pv2.at(i, j);
        nt += targets.at(i, j) * targets.at(i, j);
      }
      if (np <= 0.0 || nt <= 0.0) continue;  // zero gradient on degenerate rows
      const double inp = std::sqrt(np);
      const double int_ = std::sqrt(nt);
      const double cosv = dot / (inp * int_);
      const double outer = gamma * std::pow(1.0 - cosv, gamma - 1.0);
      for (int j = 0; j < m; ++j) {
        const double dcos =
            targets.at(i, j) / (inp * int_) - cosv * pv2.at(i, j) / np;
        gp.at(i, j) += g * (1.0 / n) * outer * (-dcos);
      }
    }
  };
  return self;
}

Tape::Var Tape::sum_squares(Var x) {
  const Mat& xv = value(x);
  double s = 0.0;
  for (double v : xv.d) s += v * v;
  Mat out(1, 1);
  out.at(0, 0) = s;
  const int id = push(std::move(out), {});
  Var self{id, 1, 1};
  nodes_[id].back = [self, x](Tape& t) {
    const double g = t.nodes_[self.id].grad.at(0, 0);
    const Mat& xv2 = t.value(x);
    Mat& gx = t.grad_mut(x.id);
    for (std::size_t i = 0; i < xv2.d.size(); ++i) gx.d[i] += g * 2.0 * xv2.d[i];
  };
  return self;
}

Tape::Var Tape::dot_const(Var x, const Mat& weights) {
  const Mat& xv = value(x);
  double s = 0.0;
  for (std::size_t i = 0; i < xv.d.size(); ++i) s += xv.d[i] * weights.d[i];
  Mat out(1, 1);
  out.at(0, 0) = s;
  const int id = push(std::move(out), {});
  Var self{id, 1, 1};
  nodes_[id].back = [self, x, weights](Tape& t) {
    const double g = t.nodes_[self.id].grad.at(0, 0);
    Mat& gx = t.grad_mut(x.id);
    for (std::size_t i = 0; i < gx.d.size(); ++i) gx.d[i] += g * weights.d[i];
  };
  return self;
}

Tape::Var Tape::add_scalars(const std::vector<Var>& xs) {
  double s = 0.0;
  for (Var v : xs) s += value(v).at(0, 0);
  Mat out(1, 1);
  out.at(0, 0) = s;
  const int id = push(std::move(out), {});
  Var self{id, 1, 1};
  nodes_[id].back = [self, xs](Tape& t) {
    const double g = t.nodes_[self.id].grad.at(0, 0);
    for (Var v : xs) t.grad_mut(v.id).at(0, 0) += g;
  };
  return self;
}

void Tape::backward(Var root) {
  if (value(root).size() != 1)
    throw NumericError("backward root must be a scalar");
  nodes_[root.id].grad.at(0, 0) = 1.0;
  for (int i = root.id; i >= 0; --i)
    if (nodes_[i].back) nodes_[i].back(*this);
}

}  // namespace moltok
