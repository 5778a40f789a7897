//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_QSAR_SVM_H_
#define MOLRL_QSAR_SVM_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "molrl/fingerprint/butina.h"
#include "molrl/fingerprint/fingerprint.h"

namespace molrl::qsar {

// Labels are 1 (active) and 0 (inactive).
struct LabeledDataset {
  std::vector<fp::Fingerprint> fingerprints;
  std::vector<int> labels;
  std::vector<fp::SplitTag> split;  // optional provenance; empty or congruent

  std::size_t size() const { return labels.size(); }
  std::size_t num_active() const;
  // Throws DataError if lengths disagree or a label is not 0/1.
  void validate() const;
};

// exp(-gamma * d2) with d2 = |A u B| - |A n B|, the squared distance between
// the binary indicator vectors. Throws DataError on kind/diameter mismatch.
double rbf_kernel(const fp::Fingerprint& a, const fp::Fingerprint& b, double gamma);

struct SvmOptions {
  double c = 1.0;
  double gamma = 0.1;
  double tolerance = 1e-3;        // stop when the maximal KKT violation <= tolerance
  std::int64_t max_iterations = 1000000;
  std::size_t cache_rows = 512;   // kernel rows kept in the LRU cache
  bool calibrate = true;          // fit the Platt sigmoid
  int calibration_folds = 5;
  std::uint64_t seed = 0;         // fold assignment for calibration
};

// Result of the dual solve on a generic kernel.
struct DualSolution {
  std::vector<double> alpha;
  double bias = 0.0;           // decision = sum alpha_i y_i K(x_i, x) + bias
  double objective = 0.0;      // sum alpha - 1/2 alpha' Q alpha (maximized)
  double max_violation = 0.0;  // KKT residual at exit
  std::int64_t iterations = 0;
};

// SMO with maximal-violating-pair working-set selection. `kernel(i, j)`
// returns K(x_i, x_j); y entries are +1/-1. Throws NumericalError if the
// violation is still above tolerance after max_iterations.
DualSolution solve_dual(std::size_t n, const std::function<double(std::size_t, std::size_t)>& kernel,
                        std::span<const int> y, const SvmOptions& options);

struct SvmModel {
  double c = 0.0;
  double gamma = 0.0;
  std::vector<fp::Fingerprint> support;
  std::vector<double> coef;  // alpha_i * y_i
  double bias = 0.0;
  double platt_a = -1.0;     // P(active) = 1 / (1 + exp(a f + b)), a < 0
  double platt_b = 0.0;
  double objective = 0.0;
  double max_violation = 0.0;
  std::int64_t iterations = 0;
};

SvmModel train_svm(const LabeledDataset& train, const SvmOptions& options);

double decision_value(const SvmModel& model, const fp::Fingerprint& x);
double predict_probability(const SvmModel& model, const fp::Fingerprint& x);
double platt_probability(double decision, double a, double b);

struct PlattParams {
  double a = -1.0;
  double b = 0.0;
};

// Regularized-target sigmoid fit by Newton's method with backtracking.
// The slope is forced negative so probability rises with the decision value.
PlattParams fit_platt(std::span<const double> decisions, std::span<const int> labels);

}  // namespace molrl::qsar

#endif  // MOLRL_QSAR_SVM_H_
