//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/qsar/grid_search.h"

#include <algorithm>
#include <cmath>

#include "molrl/common/error.h"
#include "molrl/qsar/metrics.h"

namespace molrl::qsar {

std::vector<double> power_grid(int lo, int hi) {
  std::vector<double> g;
  for (int e = lo; e <= hi; ++e) g.push_back(std::ldexp(1.0, e));
  return g;
}

std::vector<double> default_c_grid() { return power_grid(-2, 9); }
std::vector<double> default_gamma_grid() { return power_grid(-8, 1); }

GridResult grid_search(const LabeledDataset& train, const LabeledDataset& validation, const std::vector<double>& c_grid,
                       const std::vector<double>& gamma_grid, const SvmOptions& base) {
  if (c_grid.empty() || gamma_grid.empty()) throw ConfigError("grid_search: empty grid");
  validation.validate();
  std::vector<double> cs = c_grid;
  std::vector<double> gs = gamma_grid;
  std::sort(cs.begin(), cs.end());
  std::sort(gs.begin(), gs.end());

  GridResult result;
  bool found = false;
  for (const double c : cs) {
    for (const double g : gs) {
      GridCell cell{c, g, std::nullopt, {}};
      try {
        SvmOptions opt = base;
        opt.c = c;
        opt.gamma = g;
        opt.calibrate = false;
        const SvmModel m = train_svm(train, opt);
        std::vector<double> dec(validation.size());
        for (std::size_t i = 0; i < validation.size(); ++i) dec[i] = decision_value(m, validation.fingerprints[i]);
        cell.validation_auc = roc_auc(dec, validation.labels);
        if (!cell.validation_auc) cell.error = "validation set has a single class";
      } catch (const Error& e) {
        cell.error = e.what();
      }
      // Strict improvement keeps the earliest (smallest C, then gamma) on ties.
      if (cell.validation_auc && (!found || *cell.validation_auc > result.best_auc)) {
        found = true;
        result.best_auc = *cell.validation_auc;
        result.best_c = c;
        result.best_gamma = g;
      }
      result.cells.push_back(std::move(cell));
    }
  }
  if (!found) throw DataError("grid_search: no grid point trained successfully");
  return result;
}

}  // namespace molrl::qsar
