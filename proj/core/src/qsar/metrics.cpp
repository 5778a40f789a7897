//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/qsar/metrics.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "molrl/common/error.h"

namespace molrl::qsar {

std::optional<double> roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DataError("roc_auc: size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum = 0.0;
  double n_pos = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        rank_sum += avg_rank;
        n_pos += 1.0;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) return std::nullopt;
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

MetricsReport classification_metrics(std::span<const double> probs, std::span<const int> labels, double threshold) {
  if (probs.size() != labels.size()) throw DataError("metrics: size mismatch");
  MetricsReport r;
  r.count = probs.size();
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const bool pred = probs[i] > threshold;
    const bool act = labels[i] == 1;
    if (pred && act) ++tp;
    else if (pred) ++fp;
    else if (act) ++fn;
    else ++tn;
  }
  if (r.count > 0) r.accuracy = static_cast<double>(tp + tn) / static_cast<double>(r.count);
  if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  r.roc_auc = roc_auc(probs, labels);
  return r;
}

MetricsReport evaluate(const SvmModel& model, const LabeledDataset& data) {
  data.validate();
  std::vector<double> probs(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) probs[i] = predict_probability(model, data.fingerprints[i]);
  return classification_metrics(probs, data.labels);
}

}  // namespace molrl::qsar
