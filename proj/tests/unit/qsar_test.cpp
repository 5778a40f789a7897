//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "molrl/common/rng.h"
#include "molrl/qsar/grid_search.h"
#include "molrl/qsar/metrics.h"
#include "molrl/qsar/model_io.h"
#include "molrl/qsar/svm.h"
#include "molrl/scoring/scoring.h"
#include "molrl/smiles/parser.h"
#include "molrl/synth/generator.h"
#include "oracles.h"
#include "test_util.h"

namespace molrl::qsar {
namespace {

fp::Fingerprint features(std::vector<std::uint32_t> f) {
  fp::Fingerprint out;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  out.features = f;
  out.diameter = 6;
  return out;
}

LabeledDataset random_dataset(Rng& rng, int n, int universe) {
  LabeledDataset d;
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    std::vector<std::uint32_t> f;
    for (int u = 0; u < universe; ++u) {
      // Class-dependent feature rates make the problem learnable but noisy.
      const double rate = (u < universe / 2) == (label == 1) ? 0.6 : 0.25;
      if (rng.bernoulli(rate)) f.push_back(static_cast<std::uint32_t>(u));
    }
    d.fingerprints.push_back(features(f));
    d.labels.push_back(label);
  }
  return d;
}

LabeledDataset molecule_dataset(std::size_t actives, std::size_t inactives, std::uint64_t seed) {
  LabeledDataset d;
  for (const auto& m : synth::generate_activity_dataset(actives, inactives, seed)) {
    d.fingerprints.push_back(scoring::activity_fingerprint(smiles::parse_molecule(m.smiles).value()));
    d.labels.push_back(m.label);
  }
  return d;
}

TEST(RbfKernelTest, Examples) {
  const auto a = features({1, 2, 3, 4});
  EXPECT_EQ(rbf_kernel(a, a, 0.3), 1.0);
  const auto b = features({1, 2, 5, 6});  // d^2 = 6 - 2 = 4
  EXPECT_NEAR(rbf_kernel(a, b, std::ldexp(1.0, -6)), std::exp(-0.0625), 1e-15);
  EXPECT_NEAR(rbf_kernel(a, b, std::ldexp(1.0, -6)), 0.93941, 1e-5);
  EXPECT_LT(rbf_kernel(a, b, 1e3), 1e-300);
  fp::Fingerprint other = b;
  other.kind = fp::InvariantKind::kFeature;
  EXPECT_THROW(rbf_kernel(a, other, 0.1), DataError);
}

TEST(SvmTest, SeparableToySetHasNoTrainingErrors) {
  LabeledDataset d;
  d.fingerprints = {features({1, 2}), features({1, 3}), features({7, 8}), features({7, 9})};
  d.labels = {1, 1, 0, 0};
  SvmOptions opt;
  opt.c = 10.0;
  opt.gamma = 0.5;
  opt.calibrate = false;
  const SvmModel m = train_svm(d, opt);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(decision_value(m, d.fingerprints[i]) > 0, d.labels[i] == 1);
  }
}

TEST(SvmTest, DualObjectiveMatchesProjectedGradientOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6 + trial % 7;
    const LabeledDataset d = random_dataset(rng, n, 8);
    const double c = trial % 2 ? 0.5 : 4.0;
    const double gamma = 0.1 + 0.05 * trial;
    Eigen::MatrixXd k(n, n);
    Eigen::VectorXd y(n);
    std::vector<int> ys(n);
    for (int i = 0; i < n; ++i) {
      ys[i] = d.labels[i] ? 1 : -1;
      y(i) = ys[i];
      for (int j = 0; j < n; ++j) {
        k(i, j) = std::exp(-gamma * oracle::set_sq_distance(d.fingerprints[i].features, d.fingerprints[j].features));
      }
    }
    SvmOptions opt;
    opt.c = c;
    opt.tolerance = 1e-9;
    const DualSolution sol = solve_dual(
        n, [&](std::size_t i, std::size_t j) { return k(static_cast<long>(i), static_cast<long>(j)); }, ys, opt);
    const double want = oracle::svm_dual_pgd(k, y, c);
    EXPECT_NEAR(sol.objective, want, 1e-6) << trial;
    double eq = 0.0;
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(sol.alpha[i], 0.0);
      EXPECT_LE(sol.alpha[i], c);
      eq += sol.alpha[i] * ys[i];
    }
    EXPECT_NEAR(eq, 0.0, 1e-9);
    EXPECT_LE(sol.max_violation, 1e-9);
  }
}

TEST(SvmTest, AlphaBoxAndKktAtDefaultTolerance) {
  Rng rng(5);
  const LabeledDataset d = random_dataset(rng, 60, 20);
  SvmOptions opt;
  opt.c = 2.0;
  opt.gamma = 0.1;
  opt.calibrate = false;
  const SvmModel m = train_svm(d, opt);
  EXPECT_LE(m.max_violation, opt.tolerance);
  for (std::size_t i = 0; i < m.coef.size(); ++i) {
    EXPECT_LE(std::abs(m.coef[i]), opt.c + 1e-12);
    EXPECT_GT(std::abs(m.coef[i]), 0.0);
  }
}

TEST(SvmTest, SwappingLabelsNegatesDecisions) {
  Rng rng(6);
  LabeledDataset d = random_dataset(rng, 30, 12);
  SvmOptions opt;
  opt.c = 1.0;
  opt.gamma = 0.2;
  opt.calibrate = false;
  opt.tolerance = 1e-10;
  const SvmModel m = train_svm(d, opt);
  for (auto& l : d.labels) l = 1 - l;
  const SvmModel s = train_svm(d, opt);
  Rng probe(7);
  const LabeledDataset probes = random_dataset(probe, 20, 12);
  for (const auto& x : probes.fingerprints) EXPECT_NEAR(decision_value(m, x), -decision_value(s, x), 1e-6);
}

TEST(SvmTest, SingleClassRejected) {
  LabeledDataset d;
  d.fingerprints = {features({1}), features({2})};
  d.labels = {1, 1};
  EXPECT_THROW(train_svm(d, SvmOptions{}), DataError);
  d.labels = {1, 2};
  EXPECT_THROW(train_svm(d, SvmOptions{}), DataError);
}

TEST(SvmTest, NonConvergenceReportsResidual) {
  Rng rng(8);
  const LabeledDataset d = random_dataset(rng, 40, 10);
  SvmOptions opt;
  opt.c = 100.0;
  opt.gamma = 0.05;
  opt.max_iterations = 2;
  opt.tolerance = 1e-12;
  try {
    train_svm(d, opt);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos) << e.what();
  }
}

TEST(PlattTest, Sigmoid) {
  EXPECT_EQ(platt_probability(0.0, -1.0, 0.0), 0.5);
  double prev = 0.0;
  for (double f = -40; f <= 40; f += 0.5) {
    const double p = platt_probability(f, -1.7, 0.3);
    EXPECT_GE(p, prev);
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    prev = p;
  }
  EXPECT_GT(platt_probability(1e6, -1.0, 0.0), 0.0);
  EXPECT_LT(platt_probability(1e6, -1.0, 0.0), 1.0);
}

TEST(PlattTest, FitRecoversGeneratingSigmoid) {
  Rng rng(3);
  std::vector<double> f;
  std::vector<int> y;
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform(-4, 4);
    f.push_back(x);
    y.push_back(rng.bernoulli(platt_probability(x, -1.5, 0.5)) ? 1 : 0);
  }
  const PlattParams p = fit_platt(f, y);
  EXPECT_NEAR(p.a, -1.5, 0.1);
  EXPECT_NEAR(p.b, 0.5, 0.1);
}

TEST(SvmTest, SplitSupportVectorLeavesPredictionsUnchanged) {
  const LabeledDataset d = molecule_dataset(30, 30, 4);
  SvmOptions opt;
  opt.c = 2.0;
  opt.gamma = 0.02;
  const SvmModel m = train_svm(d, opt);
  SvmModel split = m;
  split.support.push_back(split.support[0]);
  split.coef[0] *= 0.5;
  split.coef.push_back(split.coef[0]);
  const LabeledDataset probes = molecule_dataset(10, 10, 9);
  for (const auto& x : probes.fingerprints) {
    EXPECT_NEAR(predict_probability(m, x), predict_probability(split, x), 1e-9);
  }
}

TEST(MetricsTest, RocAucExamples) {
  const std::vector<int> labels{1, 1, 0, 0};
  EXPECT_EQ(roc_auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, labels), 1.0);
  EXPECT_EQ(roc_auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, labels), 0.0);
  EXPECT_EQ(roc_auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, labels), 0.5);
  EXPECT_FALSE(roc_auc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}).has_value());
}

TEST(MetricsTest, RocAucMatchesPairCounting) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(199));
    std::vector<double> s(n);
    std::vector<int> l(n);
    for (int i = 0; i < n; ++i) {
      s[i] = std::round(rng.uniform() * 20) / 20;  // force ties
      l[i] = rng.bernoulli(0.4) ? 1 : 0;
    }
    l[0] = 1;
    l[1] = 0;
    EXPECT_NEAR(*roc_auc(s, l), oracle::pair_count_auc(s, l), 1e-12);
  }
}

TEST(MetricsTest, SixExampleConfusion) {
  // Predicted active: 0.9, 0.8 (true) and 0.6 (false); 0.4 is a missed active.
  const std::vector<double> p{0.9, 0.8, 0.4, 0.6, 0.2, 0.1};
  const std::vector<int> y{1, 1, 1, 0, 0, 0};
  const MetricsReport m = classification_metrics(p, y);
  EXPECT_EQ(m.count, 6u);
  EXPECT_DOUBLE_EQ(m.accuracy, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(*m.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*m.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*m.roc_auc, 8.0 / 9.0);
}

TEST(MetricsTest, UndefinedPrecisionIsAbsent) {
  const MetricsReport m = classification_metrics(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 0});
  EXPECT_FALSE(m.precision.has_value());
  EXPECT_EQ(*m.recall, 0.0);
}

TEST(GridSearchTest, SinglePoint) {
  const LabeledDataset train = molecule_dataset(20, 20, 1), val = molecule_dataset(10, 10, 2);
  const GridResult g = grid_search(train, val, {2.0}, {0.05});
  EXPECT_EQ(g.best_c, 2.0);
  EXPECT_EQ(g.best_gamma, 0.05);
  EXPECT_EQ(g.cells.size(), 1u);
}

TEST(GridSearchTest, SaneGammaBeatsDegenerateGamma) {
  const LabeledDataset train = molecule_dataset(30, 30, 1), val = molecule_dataset(15, 15, 2);
  const GridResult g = grid_search(train, val, {1.0}, {1e4, 0.02});
  EXPECT_EQ(g.best_gamma, 0.02);
  std::map<double, double> auc_by_gamma;
  for (const auto& cell : g.cells) {
    ASSERT_TRUE(cell.validation_auc.has_value());
    auc_by_gamma[cell.gamma] = *cell.validation_auc;
  }
  EXPECT_LT(auc_by_gamma.at(1e4), auc_by_gamma.at(0.02));
}

TEST(GridSearchTest, TiesPreferSmallerC) {
  const LabeledDataset train = molecule_dataset(20, 20, 1), val = molecule_dataset(10, 10, 2);
  const GridResult g = grid_search(train, val, {8.0, 2.0}, {1e4});
  EXPECT_EQ(g.best_c, 2.0);
}

TEST(GridSearchTest, DefaultGridCoversReportedOptimum) {
  const auto cs = default_c_grid(), gs = default_gamma_grid();
  EXPECT_EQ(cs.front(), 0.25);
  EXPECT_EQ(cs.back(), 512.0);
  EXPECT_NE(std::find(cs.begin(), cs.end(), 128.0), cs.end());
  EXPECT_NE(std::find(gs.begin(), gs.end(), std::ldexp(1.0, -6)), gs.end());
  EXPECT_EQ(gs.front(), std::ldexp(1.0, -8));
  EXPECT_EQ(gs.back(), 2.0);
}

TEST(ModelIoTest, RoundTrip) {
  const LabeledDataset d = molecule_dataset(15, 15, 3);
  SvmOptions opt;
  opt.c = 2.0;
  opt.gamma = 0.03;
  const SvmModel m = train_svm(d, opt);
  const auto dir = testing::temp_dir("svm_io");
  save_svm(m, (dir / "m.json").string());
  const SvmModel back = load_svm((dir / "m.json").string());
  for (const auto& x : d.fingerprints) EXPECT_EQ(predict_probability(m, x), predict_probability(back, x));
  EXPECT_THROW(svm_from_json("{\"format\":\"other\"}"), DataError);
  EXPECT_THROW(svm_from_json("not json"), DataError);
}

TEST(EndToEndTest, SyntheticTaskSeparates) {
  const LabeledDataset train = molecule_dataset(120, 120, 1), test = molecule_dataset(40, 40, 2);
  SvmOptions opt;
  opt.c = 4.0;
  opt.gamma = 0.02;
  const MetricsReport r = evaluate(train_svm(train, opt), test);
  EXPECT_GT(*r.roc_auc, 0.9);
}

}  // namespace
}  // namespace molrl::qsar
