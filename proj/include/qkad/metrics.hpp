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

// Anomaly (-1) is the positive class throughout.
struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double average_precision = 0.0;
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  bool degenerate = false;  // some ratio had a zero denominator
};

// Precision/recall/F1 from hard labels; zero denominators give 0 and set the
// degenerate flag.
EvalReport prf1(std::span<const int> truth, std::span<const int> predicted);

// Area under the precision-recall curve with thresholds at the distinct score
// values (higher score = more anomalous). Ties share a threshold; sorting
// breaks them by original index for determinism.
double average_precision(std::span<const int> truth,
                         std::span<const double> anomaly_scores);

// Full report from decision scores: labels from the sign threshold, the
// ranking metric from the negated score (lower decision value = more
// anomalous).
EvalReport evaluate_scores(std::span<const int> truth,
                           std::span<const double> decision_scores);

}  // namespace qkad
