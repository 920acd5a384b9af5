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

#include <functional>

#include "qkad/ocsvm.hpp"

namespace qkad {

// Variable subsampling: train one detector per random subset, sizes drawn
// uniformly from [n_min, n_max], floor(n/100) components by default. Scores
// are z-normalized per component over the scored batch, then averaged or
// maximized.

struct VsPlan {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t n_min = 50;
  std::size_t n_max = 100;
  std::vector<std::size_t> sizes;
  // Index subsets, each drawn without replacement; overlap across components
  // is allowed.
  std::vector<std::vector<std::size_t>> subsets;
};

enum class Combine { average, maximum };

std::string combine_name(Combine combine);
Combine combine_from_name(const std::string& name);

// components_override = 0 keeps the scalable default c = max(1, floor(n/100)).
VsPlan make_plan(std::size_t n, std::size_t n_min, std::size_t n_max,
                 std::uint64_t seed, std::size_t components_override = 0);

// Produces the kernel between two point sets; the seed argument carries the
// per-component stream so shot-based kernels stay reproducible.
using KernelFn =
    std::function<KernelMatrix(const Matrix& left, const Matrix& right, std::uint64_t seed)>;

struct VsComponent {
  OcSvmModel model;
  std::vector<std::size_t> subset;
  Matrix train_data;
  std::uint64_t seed = 0;
};

struct VsEnsemble {
  std::vector<VsComponent> components;
  Combine combine = Combine::average;
  double nu = 0.1;
  // Complexity-model counter: sum over components of rows*cols of the
  // training kernel (the c * ((n_min+n_max)/2)^2 cost law).
  std::uint64_t train_kernel_entries = 0;
  // Distinct kernel evaluations actually performed (mirrored halves not
  // recomputed), plus the shot budget behind them.
  std::uint64_t train_kernel_evaluations = 0;
  std::uint64_t train_simulated_shots = 0;
};

VsEnsemble fit(const VsPlan& plan, const Matrix& x_train, const KernelFn& kernel_fn,
               double nu, std::uint64_t seed, Combine combine = Combine::average);

struct VsScores {
  std::vector<double> combined;
  // rows = components, cols = test points; z-normalized per row.
  Matrix per_component;
  std::uint64_t kernel_entries = 0;
  std::uint64_t kernel_evaluations = 0;
  std::uint64_t simulated_shots = 0;
};

VsScores score_detailed(const VsEnsemble& ensemble, const Matrix& x_test,
                        const KernelFn& kernel_fn);
std::vector<double> score(const VsEnsemble& ensemble, const Matrix& x_test,
                          const KernelFn& kernel_fn);

// z over the batch; std below 1e-12 maps every score to 0 (the component
// abstains).
std::vector<double> normalize_scores(std::span<const double> raw);
// rows = components, cols = points.
std::vector<double> combine_scores(const Matrix& per_component, Combine combine);

// Ensemble serialization: plan echo, combine mode, component models.
void save_ensemble(const std::string& path, const VsEnsemble& ensemble);
VsEnsemble load_ensemble(const std::string& path);

}  // namespace qkad
