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

#include "qkad/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace qkad {

EvalReport prf1(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw ConfigError("prf1: label vectors differ in length");
  }
  EvalReport report;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == kAnomaly;
    const bool flagged = predicted[i] == kAnomaly;
    if (actual && flagged) ++report.tp;
    else if (!actual && flagged) ++report.fp;
    else if (actual && !flagged) ++report.fn;
    else ++report.tn;
  }
  if (report.tp + report.fp > 0) {
    report.precision = static_cast<double>(report.tp) /
                       static_cast<double>(report.tp + report.fp);
  } else {
    report.degenerate = true;
  }
  if (report.tp + report.fn > 0) {
    report.recall = static_cast<double>(report.tp) /
                    static_cast<double>(report.tp + report.fn);
  } else {
    report.degenerate = true;
  }
  if (report.precision + report.recall > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall /
                (report.precision + report.recall);
  } else {
    report.degenerate = true;
  }
  return report;
}

double average_precision(std::span<const int> truth,
                         std::span<const double> anomaly_scores) {
  if (truth.size() != anomaly_scores.size()) {
    throw ConfigError("average_precision: input lengths differ");
  }
  const std::int64_t positives = std::count(truth.begin(), truth.end(), kAnomaly);
  if (positives == 0) {
    throw NumericError("average_precision undefined: no true anomalies");
  }

  std::vector<std::size_t> order(truth.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (anomaly_scores[a] != anomaly_scores[b]) {
      return anomaly_scores[a] > anomaly_scores[b];
    }
    return a < b;
  });

  // One precision/recall step per distinct score value.
  double ap = 0.0;
  double prev_recall = 0.0;
  std::int64_t tp = 0;
  std::int64_t seen = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    ++seen;
    if (truth[order[k]] == kAnomaly) ++tp;
    const bool boundary = k + 1 == order.size() ||
                          anomaly_scores[order[k + 1]] != anomaly_scores[order[k]];
    if (!boundary) continue;
    const double recall = static_cast<double>(tp) / static_cast<double>(positives);
    const double precision = static_cast<double>(tp) / static_cast<double>(seen);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

EvalReport evaluate_scores(std::span<const int> truth,
                           std::span<const double> decision_scores) {
  std::vector<int> predicted(decision_scores.size());
  std::vector<double> anomaly_scores(decision_scores.size());
  for (std::size_t i = 0; i < decision_scores.size(); ++i) {
    predicted[i] = decision_scores[i] < 0.0 ? kAnomaly : kNormal;
    anomaly_scores[i] = -decision_scores[i];
  }
  EvalReport report = prf1(truth, predicted);
  report.average_precision = average_precision(truth, anomaly_scores);
  return report;
}

}  // namespace qkad
