//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/qsar/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <unordered_map>

#include "molrl/common/error.h"
#include "molrl/common/rng.h"

namespace molrl::qsar {
namespace {

// Bounded LRU cache of kernel rows.
class KernelCache {
 public:
  KernelCache(std::size_t n, std::size_t capacity, const std::function<double(std::size_t, std::size_t)>& kernel)
      : n_(n), capacity_(std::max<std::size_t>(capacity, 2)), kernel_(kernel) {}

  const std::vector<double>& row(std::size_t i) {
    if (auto it = index_.find(i); it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
    if (index_.size() >= capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
    std::vector<double> r(n_);
    for (std::size_t j = 0; j < n_; ++j) r[j] = kernel_(i, j);
    order_.emplace_front(i, std::move(r));
    index_[i] = order_.begin();
    return order_.front().second;
  }

 private:
  using Entry = std::pair<std::size_t, std::vector<double>>;
  std::size_t n_;
  std::size_t capacity_;
  const std::function<double(std::size_t, std::size_t)>& kernel_;
  std::list<Entry> order_;
  std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
};

int sign_label(int label) { return label == 1 ? 1 : -1; }

}  // namespace

std::size_t LabeledDataset::num_active() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

void LabeledDataset::validate() const {
  if (fingerprints.size() != labels.size()) throw DataError("dataset: fingerprint and label counts differ");
  if (!split.empty() && split.size() != labels.size()) throw DataError("dataset: split tags not congruent");
  for (const int l : labels) {
    if (l != 0 && l != 1) throw DataError("dataset: labels must be 0 or 1");
  }
}

double rbf_kernel(const fp::Fingerprint& a, const fp::Fingerprint& b, double gamma) {
  if (a.kind != b.kind || a.diameter != b.diameter) throw DataError("rbf_kernel: fingerprint settings differ");
  const std::size_t inter = fp::intersection_size(a, b);
  const double d2 = static_cast<double>(a.size() + b.size() - 2 * inter);  // |A u B| - |A n B|
  return std::exp(-gamma * d2);
}

DualSolution solve_dual(std::size_t n, const std::function<double(std::size_t, std::size_t)>& kernel,
                        std::span<const int> y, const SvmOptions& options) {
  if (y.size() != n) throw DataError("solve_dual: label count mismatch");
  if (!(options.c > 0.0)) throw ConfigError("SVM C must be positive");
  const double c = options.c;
  KernelCache cache(n, options.cache_rows, kernel);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = kernel(i, i);

  DualSolution sol;
  sol.alpha.assign(n, 0.0);
  auto& alpha = sol.alpha;
  std::vector<double> grad(n, -1.0);  // Q alpha - e
  auto in_up = [&](std::size_t t) { return (y[t] == 1 && alpha[t] < c) || (y[t] == -1 && alpha[t] > 0); };
  auto in_low = [&](std::size_t t) { return (y[t] == 1 && alpha[t] > 0) || (y[t] == -1 && alpha[t] < c); };

  while (true) {
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t i = n;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    sol.max_violation = (i == n || j == n) ? 0.0 : gmax - gmin;
    if (sol.max_violation <= options.tolerance) break;
    if (sol.iterations >= options.max_iterations) {
      throw NumericalError("SMO did not converge in " + std::to_string(options.max_iterations) +
                           " iterations (KKT residual " + std::to_string(sol.max_violation) + ")");
    }
    ++sol.iterations;

    const std::vector<double> ki = cache.row(i);
    const std::vector<double>& kj = cache.row(j);
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    double quad = diag[i] + diag[j] - 2.0 * ki[j];
    if (quad <= 0.0) quad = 1e-12;
    if (y[i] != y[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > c) { alpha[i] = c; alpha[j] = c - diff; }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) { alpha[i] = c; alpha[j] = sum - c; }
        if (alpha[j] > c) { alpha[j] = c; alpha[i] = sum - c; }
      } else {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * ki[t] * di + y[j] * kj[t] * dj);
    }
  }

  // Bias from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  int nr_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++nr_free;
      sum_free += yg;
    }
  }
  double rho = nr_free > 0 ? sum_free / nr_free : (ub + lb) / 2.0;
  if (!std::isfinite(rho)) rho = 0.0;
  sol.bias = -rho;

  double f = 0.0;
  for (std::size_t t = 0; t < n; ++t) f += alpha[t] * (grad[t] - 1.0);
  sol.objective = -0.5 * f;
  return sol;
}

double platt_probability(double decision, double a, double b) {
  const double z = a * decision + b;
  // Evaluated so exp never overflows; clamped so the result stays inside (0, 1).
  double p;
  if (z >= 0) {
    const double e = std::exp(-z);
    p = e / (1.0 + e);
  } else {
    p = 1.0 / (1.0 + std::exp(z));
  }
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

PlattParams fit_platt(std::span<const double> dec, std::span<const int> labels) {
  if (dec.size() != labels.size() || dec.empty()) throw DataError("fit_platt: bad input sizes");
  double prior1 = 0;
  double prior0 = 0;
  for (const int l : labels) (l == 1 ? prior1 : prior0) += 1;
  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  const std::size_t n = dec.size();
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] == 1 ? hi : lo;

  auto objective = [&](double a, double b) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = dec[i] * a + b;
      f += z >= 0 ? t[i] * z + std::log1p(std::exp(-z)) : (t[i] - 1.0) * z + std::log1p(std::exp(z));
    }
    return f;
  };

  double a = 0.0;
  double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
  double fval = objective(a, b);
  const double sigma = 1e-12;
  for (int it = 0; it < 100; ++it) {
    double h11 = sigma, h22 = sigma, h21 = 0, g1 = 0, g2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = platt_probability(dec[i], a, b);
      const double q = 1.0 - p;
      const double d2 = p * q;
      h11 += dec[i] * dec[i] * d2;
      h22 += d2;
      h21 += dec[i] * d2;
      const double d1 = t[i] - p;
      g1 += dec[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    bool moved = false;
    while (step >= 1e-10) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) break;
  }
  // A non-negative slope would invert the ranking; keep the sigmoid increasing.
  return {std::min(a, -1e-3), b};
}

namespace {

DualSolution solve_on(const LabeledDataset& data, std::span<const std::size_t> rows, const SvmOptions& options,
                      std::vector<int>& y) {
  y.resize(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) y[k] = sign_label(data.labels[rows[k]]);
  const std::function<double(std::size_t, std::size_t)> kernel = [&](std::size_t i, std::size_t j) {
    return rbf_kernel(data.fingerprints[rows[i]], data.fingerprints[rows[j]], options.gamma);
  };
  return solve_dual(rows.size(), kernel, y, options);
}

SvmModel model_from(const LabeledDataset& data, std::span<const std::size_t> rows, const std::vector<int>& y,
                    const DualSolution& sol, const SvmOptions& options) {
  SvmModel m;
  m.c = options.c;
  m.gamma = options.gamma;
  m.bias = sol.bias;
  m.objective = sol.objective;
  m.max_violation = sol.max_violation;
  m.iterations = sol.iterations;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (sol.alpha[k] > 0.0) {
      m.support.push_back(data.fingerprints[rows[k]]);
      m.coef.push_back(sol.alpha[k] * y[k]);
    }
  }
  return m;
}

void require_both_classes(const LabeledDataset& data, std::span<const std::size_t> rows) {
  bool pos = false;
  bool neg = false;
  for (const std::size_t r : rows) (data.labels[r] == 1 ? pos : neg) = true;
  if (!pos || !neg) throw DataError("SVM training needs both active and inactive examples");
}

}  // namespace

SvmModel train_svm(const LabeledDataset& train, const SvmOptions& options) {
  train.validate();
  if (!(options.gamma > 0.0)) throw ConfigError("SVM gamma must be positive");
  std::vector<std::size_t> all(train.size());
  std::iota(all.begin(), all.end(), 0);
  require_both_classes(train, all);

  std::vector<int> y;
  const DualSolution sol = solve_on(train, all, options, y);
  SvmModel model = model_from(train, all, y, sol, options);
  if (!options.calibrate) return model;

  // Out-of-fold decision values for the sigmoid fit.
  std::vector<double> oof(train.size());
  std::vector<std::size_t> order = all;
  Rng rng(options.seed);
  rng.shuffle(order.begin(), order.end());
  const int folds = std::max(2, options.calibration_folds);
  SvmOptions inner = options;
  inner.calibrate = false;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> fit_rows;
    std::vector<std::size_t> held;
    for (std::size_t k = 0; k < order.size(); ++k) {
      (static_cast<int>(k % static_cast<std::size_t>(folds)) == f ? held : fit_rows).push_back(order[k]);
    }
    bool pos = false;
    bool neg = false;
    for (const std::size_t r : fit_rows) (train.labels[r] == 1 ? pos : neg) = true;
    const SvmModel* scorer = &model;
    SvmModel fold_model;
    if (pos && neg) {
      std::vector<int> fy;
      const DualSolution fs = solve_on(train, fit_rows, inner, fy);
      fold_model = model_from(train, fit_rows, fy, fs, inner);
      scorer = &fold_model;
    }
    for (const std::size_t r : held) oof[r] = decision_value(*scorer, train.fingerprints[r]);
  }
  const PlattParams pp = fit_platt(oof, train.labels);
  model.platt_a = pp.a;
  model.platt_b = pp.b;
  return model;
}

double decision_value(const SvmModel& model, const fp::Fingerprint& x) {
  double f = model.bias;
  for (std::size_t k = 0; k < model.support.size(); ++k) f += model.coef[k] * rbf_kernel(model.support[k], x, model.gamma);
  return f;
}

double predict_probability(const SvmModel& model, const fp::Fingerprint& x) {
  return platt_probability(decision_value(model, x), model.platt_a, model.platt_b);
}

}  // namespace molrl::qsar
