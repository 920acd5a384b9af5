/*
 * Copyright 2026 the qkad authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "qkad/common.hpp"

namespace qkad {

// Eigendecomposition of a symmetric matrix, eigenvalues descending,
// eigenvectors as rows of `eigenvectors` in matching order.
struct SymmetricEigen {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

// Cyclic Jacobi rotations; fine for the modest sizes used here (<= a few
// hundred rows).
SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps = 100,
                            double tol = 1e-14);

// Smallest eigenvalue of a symmetric matrix via two power iterations
// (largest magnitude, then spectrum shift). Approximate; used for
// diagnostics on large matrices where a full decomposition is too costly.
double min_eigenvalue_estimate(const Matrix& a, int iterations = 80);

}  // namespace qkad
