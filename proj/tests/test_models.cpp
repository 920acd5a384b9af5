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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "oracles.hpp"
#include "qkad/dataset.hpp"
#include "qkad/metrics.hpp"
#include "qkad/vs_ensemble.hpp"

using namespace qkad;

namespace {

Matrix random_points(std::size_t n, std::size_t d, std::uint64_t seed,
                     double scale = 1.0) {
  RandomStream rng(seed);
  Matrix x(n, d);
  for (double& v : x.data) v = scale * (2.0 * rng.uniform() - 1.0);
  return x;
}

KernelMatrix gram_of(const Matrix& points, int reuploadings = 3) {
  const auto fmap =
      FeatureMapConfig::repeated_blocks(static_cast<int>(points.cols), reuploadings);
  return fidelity_exact_matrix(points, points, fmap);
}

KernelMatrix wrap(Matrix values) {
  KernelMatrix k;
  k.values = std::move(values);
  return k;
}

}  // namespace

TEST_CASE("two identical points at nu = 1") {
  KernelMatrix g = wrap(Matrix(2, 2, 1.0));
  const OcSvmModel model = solve_dual(g, 1.0);
  CHECK(model.alphas[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(model.alphas[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(model.dual_objective == doctest::Approx(0.5).epsilon(1e-9));

  // Scores on the training kernel are equal by symmetry.
  const auto scores = decision_scores(model, g);
  CHECK(scores[0] == doctest::Approx(scores[1]));
}

TEST_CASE("solutions are always feasible") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Matrix pts = random_points(12, 2, 100 + seed);
    const KernelMatrix g = gram_of(pts);
    for (double nu : {0.15, 0.4, 0.8, 1.0}) {
      const OcSvmModel model = solve_dual(g, nu);
      const double box = 1.0 / (nu * 12.0);
      double total = 0.0;
      for (double a : model.alphas) {
        CHECK(a >= -1e-12);
        CHECK(a <= box + 1e-9);
        total += a;
      }
      CHECK(std::abs(total - 1.0) <= 1e-8);
      CHECK(model.support_indices.size() >=
            static_cast<std::size_t>(std::ceil(nu * 12.0)) - 1);
    }
  }
}

TEST_CASE("solver input validation") {
  KernelMatrix rect = wrap(Matrix(2, 3, 0.5));
  CHECK_THROWS_AS(solve_dual(rect, 0.5), ConfigError);
  KernelMatrix g = wrap(Matrix(2, 2, 1.0));
  CHECK_THROWS_AS(solve_dual(g, 0.0), ConfigError);
  CHECK_THROWS_AS(solve_dual(g, 1.5), ConfigError);
  KernelMatrix bad = wrap(Matrix(2, 2, 1.0));
  bad.values(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve_dual(bad, 0.5), NumericError);
}

TEST_CASE("dual objective matches the grid-search oracle") {
  RandomStream pick(55);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + pick.uniform_int(0, 2);  // 3..5
    const Matrix pts = random_points(n, 2, 200 + trial);
    const KernelMatrix g = gram_of(pts);
    for (double nu : {0.4, 0.7, 1.0}) {
      const OcSvmModel model = solve_dual(g, nu);
      const double oracle_obj = oracle::dual_objective_bruteforce(g.values, nu);
      CHECK(std::abs(model.dual_objective - oracle_obj) <= 1e-4);
    }
  }
}

TEST_CASE("decision scores are linear in alphas and kernel rows") {
  Matrix cross(3, 4);
  RandomStream rng(77);
  for (double& v : cross.data) v = rng.uniform();

  OcSvmModel one_hot;
  one_hot.nu = 0.5;
  one_hot.rho = 0.0;
  one_hot.alphas = {0.0, 0.0, 1.0, 0.0};
  const auto col = decision_scores(one_hot, wrap(cross));
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(col[j] == doctest::Approx(cross(j, 2)).epsilon(1e-12));
  }

  OcSvmModel model;
  model.nu = 0.5;
  model.rho = 0.37;
  model.alphas = {0.4, 0.1, 0.3, 0.2};
  const auto base = decision_scores(model, wrap(cross));
  Matrix doubled = cross;
  for (std::size_t c = 0; c < 4; ++c) doubled(1, c) *= 2.0;
  const auto scaled = decision_scores(model, wrap(doubled));
  CHECK(scaled[1] + model.rho == doctest::Approx(2.0 * (base[1] + model.rho)));

  CHECK_THROWS_AS(decision_scores(model, wrap(Matrix(2, 3, 0.1))), ConfigError);
}

TEST_CASE("offset-free scores differ from decision scores by rho") {
  const Matrix pts = random_points(15, 2, 350);
  const KernelMatrix g = gram_of(pts);
  const OcSvmModel model = solve_dual(g, 0.3);
  const Matrix test = random_points(8, 2, 351);
  const KernelMatrix cross = fidelity_exact_matrix(
      test, pts, FeatureMapConfig::repeated_blocks(2, 3));
  const auto with_offset = decision_scores(model, cross);
  const auto without = sample_scores(model, cross);
  for (std::size_t j = 0; j < with_offset.size(); ++j) {
    CHECK(with_offset[j] == doctest::Approx(without[j] - model.rho).epsilon(1e-12));
  }

  // Ranking metrics cannot tell them apart.
  std::vector<int> truth(8, kNormal);
  truth[2] = truth[5] = kAnomaly;
  std::vector<double> neg_a(8), neg_b(8);
  for (std::size_t j = 0; j < 8; ++j) {
    neg_a[j] = -with_offset[j];
    neg_b[j] = -without[j];
  }
  CHECK(average_precision(truth, neg_a) ==
        doctest::Approx(average_precision(truth, neg_b)).epsilon(1e-12));
}

TEST_CASE("sign threshold labels") {
  const std::vector<double> scores{-1.0, 0.5};
  const auto labels = predict(scores);
  CHECK(labels[0] == kAnomaly);
  CHECK(labels[1] == kNormal);

  const std::vector<double> zero{0.0};
  CHECK(predict(zero)[0] == kNormal);

  const std::vector<double> positive{0.1, 2.0, 0.3};
  for (int label : predict(positive)) CHECK(label == kNormal);
}

TEST_CASE("nu-property on RBF training data") {
  const std::size_t n = 100;
  const Split split = gen_synthetic(n, 3);
  for (double nu : {0.1, 0.3, 0.5}) {
    const KernelMatrix g =
        rbf_matrix(split.train.features, split.train.features,
                   RbfConfig{gamma_scale(split.train.features)});
    const OcSvmModel model = solve_dual(g, nu);
    const auto scores = decision_scores(model, g);
    const auto outliers = static_cast<double>(
        std::count_if(scores.begin(), scores.end(), [](double s) { return s < 0.0; }));
    CHECK(outliers / static_cast<double>(n) <= nu + 2.0 / static_cast<double>(n));
    CHECK(static_cast<double>(model.support_indices.size()) / static_cast<double>(n) >=
          nu - 2.0 / static_cast<double>(n));
  }
}

TEST_CASE("training order only permutes the solution") {
  const Matrix pts = random_points(20, 2, 300);
  const KernelMatrix g = gram_of(pts);
  const OcSvmModel base = solve_dual(g, 0.3);

  std::vector<std::size_t> perm(20);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RandomStream rng(301);
  for (std::size_t i = 19; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_int(0, i)]);
  }
  Matrix shuffled_values(20, 20);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 20; ++j) {
      shuffled_values(i, j) = g.at(perm[i], perm[j]);
    }
  }
  const OcSvmModel shuffled = solve_dual(wrap(std::move(shuffled_values)), 0.3);
  CHECK(std::abs(base.dual_objective - shuffled.dual_objective) <= 1e-6);
}

TEST_CASE("duplicating a training point never raises the objective") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix pts = random_points(8, 2, 400 + seed);
    const KernelMatrix g = gram_of(pts);
    const OcSvmModel base = solve_dual(g, 0.5);

    std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5, 6, 7, 0};  // duplicate point 0
    Matrix extended = pts.take_rows(rows);
    const KernelMatrix g2 = gram_of(extended);
    // Same box 1/(nu'*9) = 1/(nu*8) keeps the feasible set comparable and
    // strictly larger, so the optimum cannot increase.
    const double nu2 = 0.5 * 8.0 / 9.0;
    const OcSvmModel wider = solve_dual(g2, nu2);
    CHECK(wider.dual_objective <= base.dual_objective + 1e-6);
  }
}

TEST_CASE("indefinite kernels run with a warning") {
  Matrix values(3, 3, 0.0);
  values(0, 0) = values(1, 1) = values(2, 2) = 1.0;
  values(0, 1) = values(1, 0) = 0.99;
  values(1, 2) = values(2, 1) = 0.99;
  values(0, 2) = values(2, 0) = -0.9;  // violates PSD badly
  const OcSvmModel model = solve_dual(wrap(std::move(values)), 0.5);
  CHECK(model.indefinite_kernel_warning);

  const Matrix pts = random_points(10, 2, 500);
  const OcSvmModel clean = solve_dual(gram_of(pts), 0.5);
  CHECK_FALSE(clean.indefinite_kernel_warning);
}

TEST_CASE("model serialization round trip") {
  const Matrix pts = random_points(9, 2, 600);
  KernelMatrix g = gram_of(pts);
  g.meta.seed = 42;
  g.meta.shots = 1000;
  const OcSvmModel model = solve_dual(g, 0.25);
  const auto path = std::filesystem::temp_directory_path() / "qkad_test_model.json";
  save_model(path.string(), model);
  const OcSvmModel loaded = load_model(path.string());
  CHECK(loaded.nu == model.nu);
  CHECK(loaded.rho == model.rho);
  CHECK(loaded.alphas == model.alphas);
  CHECK(loaded.support_indices == model.support_indices);
  CHECK(loaded.kernel_method == model.kernel_method);
  CHECK(loaded.kernel_meta.shots == 1000);
  std::filesystem::remove(path);
}

// ---------------------------------------------------------------------------
// variable subsampling

namespace {

KernelFn exact_kernel_fn(int d, int reuploadings = 3) {
  const auto fmap = FeatureMapConfig::repeated_blocks(d, reuploadings);
  return [fmap](const Matrix& left, const Matrix& right, std::uint64_t) {
    return fidelity_exact_matrix(left, right, fmap);
  };
}

}  // namespace

TEST_CASE("plan component counts and size bounds") {
  const VsPlan big = make_plan(1500, 50, 100, 0);
  CHECK(big.c == 15);
  CHECK(big.sizes.size() == 15);
  CHECK(big.subsets.size() == 15);

  const VsPlan small = make_plan(250, 50, 100, 1);
  CHECK(small.c == 2);
  for (std::size_t s : small.sizes) {
    CHECK(s >= 50);
    CHECK(s <= 100);
  }

  for (const auto& subset : big.subsets) {
    std::vector<std::size_t> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.back() < 1500);
  }

  CHECK_THROWS_AS(make_plan(80, 50, 100, 0), ConfigError);
  CHECK_THROWS_AS(make_plan(100, 0, 100, 0), ConfigError);

  const VsPlan fixed = make_plan(1000, 50, 100, 0, 25);
  CHECK(fixed.c == 25);
}

TEST_CASE("single full-coverage component reduces to a z-scored model") {
  const std::size_t n = 60;
  const Matrix pts = random_points(n, 2, 700, 0.6);
  VsPlan plan;
  plan.n = n;
  plan.c = 1;
  plan.n_min = plan.n_max = n;
  plan.sizes = {n};
  plan.subsets.resize(1);
  plan.subsets[0].resize(n);
  std::iota(plan.subsets[0].begin(), plan.subsets[0].end(), std::size_t{0});

  const KernelFn kernel = exact_kernel_fn(2);
  const VsEnsemble ensemble = fit(plan, pts, kernel, 0.2, 0, Combine::average);
  const Matrix test = random_points(10, 2, 701, 0.6);
  const auto ensemble_scores = score(ensemble, test, kernel);

  const KernelMatrix g = fidelity_exact_matrix(pts, pts,
                                               FeatureMapConfig::repeated_blocks(2, 3));
  const OcSvmModel single = solve_dual(g, 0.2);
  const KernelMatrix cross = fidelity_exact_matrix(
      test, pts, FeatureMapConfig::repeated_blocks(2, 3));
  const auto expected = normalize_scores(decision_scores(single, cross));
  for (std::size_t j = 0; j < 10; ++j) {
    CHECK(ensemble_scores[j] == doctest::Approx(expected[j]).epsilon(1e-10));
  }
}

TEST_CASE("support-vector lower bounds follow component sizes") {
  const std::size_t n = 300;
  const Matrix pts = random_points(n, 2, 702, 0.6);
  VsPlan plan;
  plan.n = n;
  plan.c = 3;
  plan.n_min = 53;
  plan.n_max = 230;
  plan.sizes = {53, 104, 230};
  plan.subsets.resize(3);
  RandomStream rng(703);
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t t = 0; t < plan.sizes[k]; ++t) {
      std::swap(pool[t], pool[t + rng.uniform_int(0, n - 1 - t)]);
    }
    plan.subsets[k].assign(pool.begin(),
                           pool.begin() + static_cast<std::ptrdiff_t>(plan.sizes[k]));
  }

  const VsEnsemble ensemble = fit(plan, pts, exact_kernel_fn(2), 0.1, 1);
  const std::size_t expected_bounds[] = {6, 11, 23};  // ceil(0.1 * size)
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(ensemble.components[k].model.support_indices.size() >= expected_bounds[k] - 1);
  }
}

TEST_CASE("component order does not change predictions") {
  const std::size_t n = 200;
  const Matrix pts = random_points(n, 2, 704, 0.6);
  const VsPlan plan = make_plan(n, 50, 100, 5);
  const KernelFn kernel = exact_kernel_fn(2);
  for (Combine combine : {Combine::average, Combine::maximum}) {
    VsEnsemble ensemble = fit(plan, pts, kernel, 0.1, 2, combine);
    const Matrix test = random_points(20, 2, 705, 0.6);
    const auto forward = score(ensemble, test, kernel);
    std::reverse(ensemble.components.begin(), ensemble.components.end());
    const auto backward = score(ensemble, test, kernel);
    for (std::size_t j = 0; j < forward.size(); ++j) {
      CHECK(forward[j] == doctest::Approx(backward[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("score normalization and combination") {
  // Constant scores: the component abstains.
  const std::vector<double> flat(8, 3.7);
  for (double v : normalize_scores(flat)) CHECK(v == 0.0);

  const std::vector<double> raw{0.3, -0.2, 1.4, 0.0, -0.7};
  const auto normalized = normalize_scores(raw);
  double mean = 0.0, var = 0.0;
  for (double v : normalized) mean += v;
  mean /= static_cast<double>(normalized.size());
  for (double v : normalized) var += (v - mean) * (v - mean);
  var /= static_cast<double>(normalized.size());
  CHECK(std::abs(mean) <= 1e-10);
  CHECK(std::abs(std::sqrt(var) - 1.0) <= 1e-10);

  // Positive-slope affine rescaling is absorbed by the normalization.
  std::vector<double> rescaled(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) rescaled[i] = 2.5 * raw[i] - 7.0;
  const auto renormalized = normalize_scores(rescaled);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CHECK(renormalized[i] == doctest::Approx(normalized[i]).epsilon(1e-12));
  }

  Matrix rows(2, 3);
  rows(0, 0) = 1.0; rows(0, 1) = -1.0; rows(0, 2) = 0.0;
  rows(1, 0) = 0.0; rows(1, 1) = 2.0; rows(1, 2) = -2.0;
  const auto avg = combine_scores(rows, Combine::average);
  const auto mx = combine_scores(rows, Combine::maximum);
  CHECK(avg[0] == doctest::Approx(0.5));
  CHECK(mx[0] == doctest::Approx(1.0));
  for (std::size_t j = 0; j < 3; ++j) CHECK(mx[j] >= avg[j]);

  // Identical components: average equals each row.
  Matrix same(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    same(k, 0) = 0.2; same(k, 1) = -0.4; same(k, 2) = 1.0;
  }
  const auto avg_same = combine_scores(same, Combine::average);
  CHECK(avg_same[0] == doctest::Approx(0.2));
  CHECK(avg_same[1] == doctest::Approx(-0.4));
  CHECK(avg_same[2] == doctest::Approx(1.0));
}

TEST_CASE("ensemble scoring preconditions and counters") {
  const std::size_t n = 200;
  const Matrix pts = random_points(n, 2, 706, 0.6);
  const VsPlan plan = make_plan(n, 50, 100, 6);
  const KernelFn kernel = exact_kernel_fn(2);
  const VsEnsemble ensemble = fit(plan, pts, kernel, 0.1, 3);

  std::uint64_t expected_entries = 0;
  for (std::size_t s : plan.sizes) expected_entries += s * s;
  CHECK(ensemble.train_kernel_entries == expected_entries);
  CHECK(ensemble.train_kernel_entries <= plan.c * plan.n_max * plan.n_max);
  CHECK(ensemble.train_kernel_entries >= plan.c * plan.n_min * plan.n_min);

  const Matrix test = random_points(25, 2, 707, 0.6);
  const VsScores scores = score_detailed(ensemble, test, kernel);
  std::uint64_t expected_test = 0;
  for (std::size_t s : plan.sizes) expected_test += s * 25;
  CHECK(scores.kernel_entries == expected_test);

  // Each component row is z-normalized over the batch.
  for (std::size_t k = 0; k < scores.per_component.rows; ++k) {
    double mean = 0.0;
    for (std::size_t j = 0; j < scores.per_component.cols; ++j) {
      mean += scores.per_component(k, j);
    }
    mean /= static_cast<double>(scores.per_component.cols);
    CHECK(std::abs(mean) <= 1e-10);
  }

  const Matrix lone = random_points(1, 2, 708);
  CHECK_THROWS_AS(score(ensemble, lone, kernel), ConfigError);
}

TEST_CASE("component failures carry the component index") {
  const std::size_t n = 120;
  const Matrix pts = random_points(n, 2, 709);
  const VsPlan plan = make_plan(n, 50, 100, 7);
  const KernelFn broken = [](const Matrix&, const Matrix&, std::uint64_t) -> KernelMatrix {
    throw NumericError("synthetic kernel failure");
  };
  try {
    fit(plan, pts, broken, 0.1, 4);
    FAIL("expected an exception");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("component 0") != std::string::npos);
  }
}

TEST_CASE("averaging reduces AP variance against a single small model") {
  const auto fmap = FeatureMapConfig::repeated_blocks(2, 3);
  std::vector<double> vs_ap, single_ap;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Split split = gen_synthetic(1000, seed);
    const KernelFn kernel = exact_kernel_fn(2);

    const VsPlan plan = make_plan(1000, 50, 100, derive_seed(seed, 1));
    REQUIRE(plan.c == 10);
    const VsEnsemble ensemble = fit(plan, split.train.features, kernel, 0.1, seed);
    const auto vs_scores = score(ensemble, split.test.features, kernel);
    vs_ap.push_back(evaluate_scores(split.test.labels, vs_scores).average_precision);

    RandomStream rng(derive_seed(seed, 2));
    std::vector<std::size_t> pool(1000);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t t = 0; t < 100; ++t) {
      std::swap(pool[t], pool[t + rng.uniform_int(0, 999 - t)]);
    }
    const Matrix sub = split.train.features.take_rows(
        std::span<const std::size_t>(pool.data(), 100));
    const OcSvmModel model = solve_dual(fidelity_exact_matrix(sub, sub, fmap), 0.1);
    const KernelMatrix cross = fidelity_exact_matrix(split.test.features, sub, fmap);
    single_ap.push_back(
        evaluate_scores(split.test.labels, decision_scores(model, cross))
            .average_precision);
  }

  auto variance = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size() - 1);
  };
  CHECK(variance(vs_ap) <= 2.0 * variance(single_ap));
}

TEST_CASE("ensemble serialization round trip") {
  const std::size_t n = 150;
  const Matrix pts = random_points(n, 2, 710, 0.6);
  const VsPlan plan = make_plan(n, 50, 100, 8);
  const KernelFn kernel = exact_kernel_fn(2);
  const VsEnsemble ensemble = fit(plan, pts, kernel, 0.1, 5, Combine::maximum);

  const auto path = std::filesystem::temp_directory_path() / "qkad_test_ensemble.json";
  save_ensemble(path.string(), ensemble);
  const VsEnsemble loaded = load_ensemble(path.string());
  CHECK(loaded.combine == Combine::maximum);
  CHECK(loaded.components.size() == ensemble.components.size());
  CHECK(loaded.train_kernel_entries == ensemble.train_kernel_entries);

  const Matrix test = random_points(12, 2, 711, 0.6);
  const auto a = score(ensemble, test, kernel);
  const auto b = score(loaded, test, kernel);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
  }
  std::filesystem::remove(path);
}
