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

#include <string>

#include "qkad/kernels.hpp"

namespace qkad {

// Binary kernel-matrix format:
//   16-byte header: magic "QKM1", u32 rows, u32 cols, u32 reserved (0),
//   all little-endian;
//   rows*cols float64 values, row-major, little-endian;
//   JSON metadata trailer {method, seed, shots, settings, gamma,
//   entry_evaluations, simulated_shots} to end of file.
void save_kernel(const std::string& path, const KernelMatrix& k);
KernelMatrix load_kernel(const std::string& path);

// Plain-text export for inspection: one row per line, comma separated.
void export_kernel_csv(const std::string& path, const KernelMatrix& k);

}  // namespace qkad
