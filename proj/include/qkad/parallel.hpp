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

#include <cstddef>
#include <functional>

namespace qkad {

// Runs body(i) for i in [0, n) across worker threads, contiguous chunks.
// Callers must write to disjoint locations; per-entry seeding keeps results
// identical to a sequential run. QKAD_THREADS overrides the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

unsigned worker_thread_count();

}  // namespace qkad
