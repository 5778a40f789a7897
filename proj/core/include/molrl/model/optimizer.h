//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_MODEL_OPTIMIZER_H_
#define MOLRL_MODEL_OPTIMIZER_H_

#include <cstdint>

#include "molrl/model/params.h"

namespace molrl::model {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double decay_rate = 0.02;  // 0 disables decay
  int decay_interval = 100;
};

struct AdamState {
  std::int64_t step = 0;  // updates applied so far
  ModelParams m;
  ModelParams v;

  static AdamState for_params(const ModelParams& params);
};

// Learning rate in effect for update number `step` (0-based): the base rate
// times (1 - decay_rate) once per completed decay interval.
double scheduled_learning_rate(const AdamConfig& config, std::int64_t step);

// One bias-corrected Adam update in place.
void adam_update(ModelParams& params, const ModelParams& grads, const AdamConfig& config, AdamState& state);

// Elementwise clamp to [-bound, bound]. Throws ConfigError if bound <= 0.
void clip_gradients(ModelParams& grads, double bound);

// params -= learning_rate * grads.
void sgd_step(ModelParams& params, const ModelParams& grads, double learning_rate);

}  // namespace molrl::model

#endif  // MOLRL_MODEL_OPTIMIZER_H_
