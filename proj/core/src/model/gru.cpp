//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/model/gru.h"

#include "molrl/common/error.h"

namespace molrl::model {
namespace {

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& x) { return 1.0 / (1.0 + (-x).exp()); }

struct Gates {
  Eigen::ArrayXd z, r, c;
};

Gates gates(const GruLayer& layer, const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  const auto n = h.size();
  const Eigen::VectorXd wx = layer.w * x + layer.b;
  const Eigen::VectorXd uzr = layer.u.topRows(2 * n) * h;
  Gates g;
  g.z = sigmoid(wx.head(n).array() + uzr.head(n).array());
  g.r = sigmoid(wx.segment(n, n).array() + uzr.tail(n).array());
  const Eigen::VectorXd rh = (g.r * h.array()).matrix();
  g.c = (wx.tail(n) + layer.u.bottomRows(n) * rh).array().tanh();
  return g;
}

}  // namespace

Eigen::VectorXd gru_step(const GruLayer& layer, const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  const Gates g = gates(layer, x, h);
  return ((1.0 - g.z) * h.array() + g.z * g.c).matrix();
}

Eigen::VectorXd gru_step(const ModelParams& params, int layer, const Eigen::VectorXd& input,
                         const Eigen::VectorXd& hidden) {
  if (layer < 0 || layer >= params.shape.num_layers) {
    throw DataError("gru_step: layer " + std::to_string(layer) + " out of range");
  }
  const auto& l = params.layers[static_cast<std::size_t>(layer)];
  if (input.size() != l.w.cols() || hidden.size() != params.shape.hidden_size) {
    throw DataError("gru_step: input or hidden vector has the wrong length");
  }
  if (!input.allFinite() || !hidden.allFinite()) {
    throw NumericalError("gru_step: non-finite input");
  }
  return gru_step(l, input, hidden);
}

GruJacobian gru_step_jacobian(const GruLayer& layer, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& h) {
  const auto n = h.size();
  const Gates g = gates(layer, x, h);
  const Eigen::ArrayXd hz = h.array();

  // Pre-activation derivatives of each gate output.
  const Eigen::ArrayXd dz = g.z * (1.0 - g.z);
  const Eigen::ArrayXd dr = g.r * (1.0 - g.r);
  const Eigen::ArrayXd dc = 1.0 - g.c.square();

  const auto wz = layer.w.topRows(n);
  const auto wr = layer.w.middleRows(n, n);
  const auto wc = layer.w.bottomRows(n);
  const auto uz = layer.u.topRows(n);
  const auto ur = layer.u.middleRows(n, n);
  const auto uc = layer.u.bottomRows(n);

  // dh'/dv = diag(c - h) dz/dv + diag(z) dc/dv  (+ diag(1 - z) for v = h)
  const Eigen::MatrixXd dz_dx = dz.matrix().asDiagonal() * wz;
  const Eigen::MatrixXd dz_dh = dz.matrix().asDiagonal() * uz;
  const Eigen::MatrixXd dr_dx = dr.matrix().asDiagonal() * wr;
  const Eigen::MatrixXd dr_dh = dr.matrix().asDiagonal() * ur;

  // d(r*h)/dx = diag(h) dr/dx ; d(r*h)/dh = diag(r) + diag(h) dr/dh
  const Eigen::MatrixXd drh_dx = hz.matrix().asDiagonal() * dr_dx;
  Eigen::MatrixXd drh_dh = hz.matrix().asDiagonal() * dr_dh;
  drh_dh.diagonal() += g.r.matrix();

  const Eigen::MatrixXd dc_dx = dc.matrix().asDiagonal() * (wc + uc * drh_dx);
  const Eigen::MatrixXd dc_dh = dc.matrix().asDiagonal() * (uc * drh_dh);

  const Eigen::VectorXd c_minus_h = (g.c - hz).matrix();
  GruJacobian j;
  j.d_input = c_minus_h.asDiagonal() * dz_dx + g.z.matrix().asDiagonal() * dc_dx;
  j.d_hidden = c_minus_h.asDiagonal() * dz_dh + g.z.matrix().asDiagonal() * dc_dh;
  j.d_hidden.diagonal() += (1.0 - g.z).matrix();
  return j;
}

}  // namespace molrl::model
