//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_QSAR_GRID_SEARCH_H_
#define MOLRL_QSAR_GRID_SEARCH_H_

#include <optional>
#include <string>
#include <vector>

#include "molrl/qsar/svm.h"

namespace molrl::qsar {

struct GridCell {
  double c = 0.0;
  double gamma = 0.0;
  std::optional<double> validation_auc;  // absent when training failed
  std::string error;
};

struct GridResult {
  double best_c = 0.0;
  double best_gamma = 0.0;
  double best_auc = 0.0;
  std::vector<GridCell> cells;  // row-major over (C, gamma)
};

// Powers of two 2^lo .. 2^hi.
std::vector<double> power_grid(int lo, int hi);
std::vector<double> default_c_grid();      // 2^-2 .. 2^9
std::vector<double> default_gamma_grid();  // 2^-8 .. 2^1

// Trains an uncalibrated SVM per grid point and ranks by validation ROC-AUC
// of the decision values. Ties go to the smaller C, then the smaller gamma.
// Throws DataError if every cell fails.
GridResult grid_search(const LabeledDataset& train, const LabeledDataset& validation, const std::vector<double>& c_grid,
                       const std::vector<double>& gamma_grid, const SvmOptions& base = {});

}  // namespace molrl::qsar

#endif  // MOLRL_QSAR_GRID_SEARCH_H_
