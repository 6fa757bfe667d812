//
// Project moltok - Copyright 2026 The moltok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLTOK_SPECTRAL_HPP
#define MOLTOK_SPECTRAL_HPP

#include <vector>

#include "moltok/chem.hpp"

namespace moltok {

struct EigResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[i] pairs values[i]
};

// Dense symmetric eigendecomposition by cyclic Jacobi rotations. `a` is
// row-major n x n; only the symmetric part is read. Deterministic: fixed
// sweep order, no threading.
EigResult jacobi_eigh(const std::vector<double>& a, int n);

struct LapPe {
  // Eigenpairs of the symmetric normalized Laplacian belonging to the
  // `dim` smallest strictly positive eigenvalues, ascending. Signs fixed
  // (largest-magnitude entry positive, ties to the lowest index) and
  // equal-eigenvalue blocks ordered lexicographically.
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // each length n
};

// adj: neighbor lists of an undirected graph, all edge weights 1. Throws
// NumericError if the eigensolver fails to converge. Isolated vertices are
// not supported (degree 0 would divide by zero); callers guarantee
// connectivity.
LapPe laplacian_pe_from_adjacency(const std::vector<std::vector<int>>& adj,
                                  int dim);

// Per-node rows, zero-padded to `dim` columns.
std::vector<std::vector<double>> pe_rows(const LapPe& pe, int n, int dim);

}  // namespace moltok

#endif  // MOLTOK_SPECTRAL_HPP
