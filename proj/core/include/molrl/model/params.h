//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_MODEL_PARAMS_H_
#define MOLRL_MODEL_PARAMS_H_

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "molrl/common/rng.h"

namespace molrl::model {

// Network dimensions. Ids vocab_size-2 and vocab_size-1 are GO and EOS,
// matching smiles::Vocabulary.
struct ModelShape {
  int vocab_size = 0;
  int num_layers = 1;
  int hidden_size = 0;
  bool one_hot_input = false;  // feed one-hot tokens to layer 0 instead of an embedding

  int go_id() const { return vocab_size - 2; }
  int eos_id() const { return vocab_size - 1; }
  int layer_input_size(int layer) const {
    return layer > 0 || !one_hot_input ? hidden_size : vocab_size;
  }

  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

// One GRU layer. Gate rows are stacked as [update; reset; candidate], so w is
// 3H x in, u is 3H x H and b has 3H entries.
struct GruLayer {
  Eigen::MatrixXd w;
  Eigen::MatrixXd u;
  Eigen::VectorXd b;
};

struct TensorRef {
  std::string name;
  std::span<double> data;
};

struct ConstTensorRef {
  std::string name;
  std::span<const double> data;
  long rows;
  long cols;
};

struct InitOptions {
  double scale = 0.1;              // weights uniform in [-scale, scale]
  double update_gate_bias = 5.0;  // initial update-gate bias ("forget bias")
};

// All trainable tensors of the model; the same type also holds gradients and
// optimizer moments.
struct ModelParams {
  ModelShape shape;
  Eigen::MatrixXd embedding;  // H x V; empty in one-hot mode
  std::vector<GruLayer> layers;
  Eigen::MatrixXd out_w;  // V x H
  Eigen::VectorXd out_b;  // V

  static ModelParams zeros(const ModelShape& shape);
  static ModelParams random(const ModelShape& shape, Rng& rng, const InitOptions& init = {});

  // Tensors in their fixed serialization order.
  std::vector<TensorRef> tensors();
  std::vector<ConstTensorRef> tensors() const;

  std::size_t num_parameters() const;
  bool all_finite() const;
  void set_zero();

  // CRC32 over the raw f64 bytes; used to assert immutability.
  std::uint32_t checksum() const;
};

// y += a * x.
void axpy(double a, const ModelParams& x, ModelParams& y);

// Throws DataError on any shape disagreement.
void require_same_shape(const ModelParams& a, const ModelParams& b);

// Largest absolute elementwise difference.
double max_abs_diff(const ModelParams& a, const ModelParams& b);

}  // namespace molrl::model

#endif  // MOLRL_MODEL_PARAMS_H_
