//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_QSAR_METRICS_H_
#define MOLRL_QSAR_METRICS_H_

#include <optional>
#include <span>
#include <string>

#include "molrl/qsar/svm.h"

namespace molrl::qsar {

// Undefined statistics (no positives, no predicted positives, one class
// only) are absent rather than zero.
struct MetricsReport {
  std::size_t count = 0;
  double accuracy = 0.0;
  std::optional<double> roc_auc;
  std::optional<double> precision;
  std::optional<double> recall;
};

// Mann-Whitney rank statistic with average ranks for ties; absent if either
// class is empty.
std::optional<double> roc_auc(std::span<const double> scores, std::span<const int> labels);

// Metrics from probabilities, thresholded at `threshold` for the active class.
MetricsReport classification_metrics(std::span<const double> probabilities, std::span<const int> labels,
                                     double threshold = 0.5);

MetricsReport evaluate(const SvmModel& model, const LabeledDataset& data);

}  // namespace molrl::qsar

#endif  // MOLRL_QSAR_METRICS_H_
