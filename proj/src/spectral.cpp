//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltok/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moltok {

namespace {

constexpr double kZeroEigenvalue = 1e-9;
constexpr int kMaxSweeps = 64;

double offdiag_norm(const std::vector<double>& b, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += b[p * n + q] * b[p * n + q];
  return std::sqrt(2.0 * s);
}

}  // namespace

EigResult jacobi_eigh(const std::vector<double>& a, int n) {
  std::vector<double> b(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b[i * n + j] = 0.5 * (a[i * n + j] + a[j * n + i]);
  std::vector<double> v(n * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(b[i * n + j]));
  if (scale == 0.0) scale = 1.0;
  const double tol = 1e-15 * scale * n;

  int sweep = 0;
  while (offdiag_norm(b, n) > tol) {
    if (++sweep > kMaxSweeps)
      throw NumericError("jacobi eigensolver did not converge; off-diagonal " +
                         std::to_string(offdiag_norm(b, n)));
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = b[p * n + q];
        if (std::abs(apq) <= tol / (n * n)) continue;
        const double app = b[p * n + p];
        const double aqq = b[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double bkp = b[k * n + p];
          const double bkq = b[k * n + q];
          b[k * n + p] = c * bkp - s * bkq;
          b[k * n + q] = s * bkp + c * bkq;
        }
        for (int k = 0; k < n; ++k) {
          const double bpk = b[p * n + k];
          const double bqk = b[q * n + k];
          b[p * n + k] = c * bpk - s * bqk;
          b[q * n + k] = s * bpk + c * bqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return b[x * n + x] < b[y * n + y]; });
  EigResult out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    out.values[i] = b[order[i] * n + order[i]];
    for (int k = 0; k < n; ++k) out.vectors[i][k] = v[k * n + order[i]];
  }
  return out;
}

LapPe laplacian_pe_from_adjacency(const std::vector<std::vector<int>>& adj,
                                  int dim) {
  const int n = static_cast<int>(adj.size());
  // A lone vertex has spectrum {0}: nothing positive to return, zero padding
  // covers it. (Single-atom molecules reach this through the plain graph.)
  if (n == 1 && adj[0].empty()) return {};
  std::vector<double> dinv(n);
  for (int i = 0; i < n; ++i) {
    if (adj[i].empty())
      throw NumericError("isolated vertex in positional-encoding graph");
    dinv[i] = 1.0 / std::sqrt(static_cast<double>(adj[i].size()));
  }
  std::vector<double> lap(n * n, 0.0);
  for (int i = 0; i < n; ++i) lap[i * n + i] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j : adj[i]) lap[i * n + j] -= dinv[i] * dinv[j];

  EigResult eig = jacobi_eigh(lap, n);

  LapPe out;
  for (int i = 0; i < n && static_cast<int>(out.values.size()) < dim; ++i) {
    if (eig.values[i] <= kZeroEigenvalue) continue;
    out.values.push_back(eig.values[i]);
    out.vectors.push_back(std::move(eig.vectors[i]));
  }

  // Sign: largest-magnitude entry positive, first such index decides.
  for (auto& vec : out.vectors) {
    int best = 0;
    for (int k = 1; k < n; ++k)
      if (std::abs(vec[k]) > std::abs(vec[best])) best = k;
    if (vec[best] < 0.0)
      for (double& x : vec) x = -x;
  }

  // Deterministic order inside equal-eigenvalue blocks.
  std::size_t lo = 0;
  while (lo < out.values.size()) {
    std::size_t hi = lo + 1;
    while (hi < out.values.size() &&
           out.values[hi] - out.values[lo] <= kZeroEigenvalue)
      ++hi;
    if (hi - lo > 1)
      std::sort(out.vectors.begin() + lo, out.vectors.begin() + hi,
                [](const std::vector<double>& x, const std::vector<double>& y) {
                  return std::lexicographical_compare(x.begin(), x.end(),
                                                      y.begin(), y.end());
                });
    lo = hi;
  }
  return out;
}

std::vector<std::vector<double>> pe_rows(const LapPe& pe, int n, int dim) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim, 0.0));
  for (std::size_t j = 0; j < pe.vectors.size(); ++j)
    for (int i = 0; i < n; ++i) rows[i][j] = pe.vectors[j][i];
  return rows;
}

}  // namespace moltok
