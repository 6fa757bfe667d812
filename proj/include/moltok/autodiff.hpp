//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_AUTODIFF_HPP
#define MOLTOK_AUTODIFF_HPP

#include <cstddef>
#include <memory>
#include <functional>
#include <utility>
#include <vector>

#include "moltok/chem.hpp"

namespace moltok {

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> d;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), d(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return d[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return d[static_cast<std::size_t>(i) * cols + j]; }
  std::size_t size() const { return d.size(); }
};

// Directed incidence view of a graph for message passing: nbr[u] lists
// (neighbor, edge feature row).
struct GraphTopo {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> nbr;
};

// Reverse-mode tape over dense double matrices. Single-threaded; node
// evaluation order is creation order, gradients run strictly in reverse, so
// results are bitwise reproducible.
class Tape {
public:
  struct Var {
    int id = -1;
    int rows = 0;
    int cols = 0;
  };

  Var leaf(const Mat& value);

  const Mat& value(Var v) const { return nodes_[v.id].value; }
  const Mat& grad(Var v) const { return nodes_[v.id].grad; }

  // y = x * w + 1 b  (x: [n,in], w: [in,out], b: [1,out])
  Var linear(Var x, Var w, Var b);
  Var relu(Var x);
  Var add(Var a, Var b);
  Var scale(Var a, double s);
  Var select_rows(Var x, std::vector<int> rows);
  // x with constant columns appended.
  Var concat_cols(Var x, const Mat& right);
  Var mean_rows(Var x);
  // Rows of `table` at idx (duplicates allowed; backward scatter-adds).
  Var gather_rows(Var table, std::vector<int> idx);
  // Same value as gather_rows, but the backward pass also forwards the
  // incoming gradient to `h` row-for-row (quantization treated as identity).
  Var gather_rows_st(Var table, std::vector<int> idx, Var h);
  // Layer-0 features: per node, sum of up to three table rows. A row index
  // of -1 skips that table for the node.
  Var embed_sum(Var table_a, std::vector<int> idx_a, Var table_b,
                std::vector<int> idx_b, Var table_c, std::vector<int> idx_c);
  // out[u] = (1 + eps) h[u] + sum_{(v,k) in nbr[u]} (h[v] + edges[k])
  Var gin_aggregate(Var h, Var eps, Var edges, const GraphTopo& topo);
  // scale * sum_i ||a_i - b_i||^2 with per-side gradient gates.
  Var sq_diff(Var a, Var b, double scale, bool grad_a, bool grad_b);
  // (1/n) sum_i (1 - cos(targets_i, vhat_i))^gamma; zero-norm rows count as
  // cosine 0 with zero gradient.
  Var cosine_power_loss(Var vhat, const Mat& targets, double gamma);
  Var sum_squares(Var x);
  Var dot_const(Var x, const Mat& weights);
  Var add_scalars(const std::vector<Var>& xs);

  // Seeds d(root)/d(root) = 1 and propagates to every leaf.
  void backward(Var root);

  std::size_t num_nodes() const { return nodes_.size(); }

private:
  struct Node {
    Mat value;
    Mat grad;
    std::function<void(Tape&)> back;
  };

  int push(Mat value, std::function<void(Tape&)> back);
  Mat& grad_mut(int id) { return nodes_[id].grad; }

  std::vector<Node> nodes_;
};

}  // namespace moltok

#endif  // MOLTOK_AUTODIFF_HPP
