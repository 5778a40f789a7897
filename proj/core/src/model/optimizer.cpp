//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/model/optimizer.h"

#include <algorithm>
#include <cmath>

#include "molrl/common/error.h"

namespace molrl::model {

AdamState AdamState::for_params(const ModelParams& params) {
  AdamState s;
  s.m = ModelParams::zeros(params.shape);
  s.v = ModelParams::zeros(params.shape);
  return s;
}

double scheduled_learning_rate(const AdamConfig& config, std::int64_t step) {
  if (config.decay_rate <= 0.0 || config.decay_interval <= 0) return config.learning_rate;
  const auto periods = static_cast<double>(step / config.decay_interval);
  return config.learning_rate * std::pow(1.0 - config.decay_rate, periods);
}

void adam_update(ModelParams& params, const ModelParams& grads, const AdamConfig& config, AdamState& state) {
  require_same_shape(params, grads);
  if (state.m.layers.empty() && !params.layers.empty()) state = AdamState::for_params(params);
  require_same_shape(params, state.m);
  require_same_shape(params, state.v);

  const double lr = scheduled_learning_rate(config, state.step);
  ++state.step;
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));

  auto p = params.tensors();
  const auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t i = 0; i < p[k].data.size(); ++i) {
      const double gi = g[k].data[i];
      double& mi = m[k].data[i];
      double& vi = v[k].data[i];
      mi = config.beta1 * mi + (1.0 - config.beta1) * gi;
      vi = config.beta2 * vi + (1.0 - config.beta2) * gi * gi;
      p[k].data[i] -= lr * (mi / bc1) / (std::sqrt(vi / bc2) + config.epsilon);
    }
  }
}

void clip_gradients(ModelParams& grads, double bound) {
  if (!(bound > 0.0)) throw ConfigError("clip bound must be positive");
  for (auto& t : grads.tensors()) {
    for (double& x : t.data) x = std::clamp(x, -bound, bound);
  }
}

void sgd_step(ModelParams& params, const ModelParams& grads, double learning_rate) {
  axpy(-learning_rate, grads, params);
}

}  // namespace molrl::model
