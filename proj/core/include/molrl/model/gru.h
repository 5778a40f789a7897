//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_MODEL_GRU_H_
#define MOLRL_MODEL_GRU_H_

#include <Eigen/Dense>

#include "molrl/model/params.h"

namespace molrl::model {

// h' = (1 - z) * h + z * tanh(Wc x + Uc (r * h) + bc), with
// z = sigmoid(Wz x + Uz h + bz) and r = sigmoid(Wr x + Ur h + br).
Eigen::VectorXd gru_step(const GruLayer& layer, const Eigen::VectorXd& input,
                         const Eigen::VectorXd& hidden);

// Checked variant: throws DataError on shape mismatch, NumericalError on
// non-finite input.
Eigen::VectorXd gru_step(const ModelParams& params, int layer, const Eigen::VectorXd& input,
                         const Eigen::VectorXd& hidden);

struct GruJacobian {
  Eigen::MatrixXd d_input;   // H x in
  Eigen::MatrixXd d_hidden;  // H x H
};

GruJacobian gru_step_jacobian(const GruLayer& layer, const Eigen::VectorXd& input,
                              const Eigen::VectorXd& hidden);

}  // namespace molrl::model

#endif  // MOLRL_MODEL_GRU_H_
