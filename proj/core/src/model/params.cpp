//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/model/params.h"

#include <cmath>

#include "molrl/common/error.h"
#include "molrl/common/io.h"

namespace molrl::model {
namespace {

template <typename Derived>
std::span<double> as_span(Eigen::PlainObjectBase<Derived>& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

template <typename Derived>
ConstTensorRef as_const_ref(std::string name, const Eigen::PlainObjectBase<Derived>& m) {
  return {std::move(name), {m.data(), static_cast<std::size_t>(m.size())}, m.rows(), m.cols()};
}

}  // namespace

ModelParams ModelParams::zeros(const ModelShape& shape) {
  if (shape.vocab_size < 3 || shape.num_layers < 1 || shape.hidden_size < 1) {
    throw ConfigError("model shape needs vocab_size >= 3, num_layers >= 1, hidden_size >= 1");
  }
  ModelParams p;
  p.shape = shape;
  const int h = shape.hidden_size;
  if (!shape.one_hot_input) p.embedding = Eigen::MatrixXd::Zero(h, shape.vocab_size);
  for (int l = 0; l < shape.num_layers; ++l) {
    GruLayer layer;
    layer.w = Eigen::MatrixXd::Zero(3 * h, shape.layer_input_size(l));
    layer.u = Eigen::MatrixXd::Zero(3 * h, h);
    layer.b = Eigen::VectorXd::Zero(3 * h);
    p.layers.push_back(std::move(layer));
  }
  p.out_w = Eigen::MatrixXd::Zero(shape.vocab_size, h);
  p.out_b = Eigen::VectorXd::Zero(shape.vocab_size);
  return p;
}

ModelParams ModelParams::random(const ModelShape& shape, Rng& rng, const InitOptions& init) {
  ModelParams p = zeros(shape);
  for (auto& t : p.tensors()) {
    for (double& x : t.data) x = rng.uniform(-init.scale, init.scale);
  }
  for (auto& layer : p.layers) {
    layer.b.head(shape.hidden_size).setConstant(init.update_gate_bias);
  }
  return p;
}

std::vector<TensorRef> ModelParams::tensors() {
  std::vector<TensorRef> out;
  if (embedding.size() > 0) out.push_back({"embedding", as_span(embedding)});
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto prefix = "gru" + std::to_string(l) + ".";
    out.push_back({prefix + "w", as_span(layers[l].w)});
    out.push_back({prefix + "u", as_span(layers[l].u)});
    out.push_back({prefix + "b", as_span(layers[l].b)});
  }
  out.push_back({"out.w", as_span(out_w)});
  out.push_back({"out.b", as_span(out_b)});
  return out;
}

std::vector<ConstTensorRef> ModelParams::tensors() const {
  std::vector<ConstTensorRef> out;
  if (embedding.size() > 0) out.push_back(as_const_ref("embedding", embedding));
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto prefix = "gru" + std::to_string(l) + ".";
    out.push_back(as_const_ref(prefix + "w", layers[l].w));
    out.push_back(as_const_ref(prefix + "u", layers[l].u));
    out.push_back(as_const_ref(prefix + "b", layers[l].b));
  }
  out.push_back(as_const_ref("out.w", out_w));
  out.push_back(as_const_ref("out.b", out_b));
  return out;
}

std::size_t ModelParams::num_parameters() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += t.data.size();
  return n;
}

bool ModelParams::all_finite() const {
  for (const auto& t : tensors()) {
    for (const double x : t.data) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

void ModelParams::set_zero() {
  for (auto& t : tensors()) std::fill(t.data.begin(), t.data.end(), 0.0);
}

std::uint32_t ModelParams::checksum() const {
  std::string bytes;
  for (const auto& t : tensors()) {
    bytes.append(reinterpret_cast<const char*>(t.data.data()), t.data.size_bytes());
  }
  return io::crc32(bytes);
}

void require_same_shape(const ModelParams& a, const ModelParams& b) {
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  bool same = a.shape == b.shape && ta.size() == tb.size();
  for (std::size_t i = 0; same && i < ta.size(); ++i) {
    same = ta[i].rows == tb[i].rows && ta[i].cols == tb[i].cols;
  }
  if (!same) throw DataError("model tensors have mismatched shapes");
}

void axpy(double a, const ModelParams& x, ModelParams& y) {
  require_same_shape(x, y);
  auto tx = x.tensors();
  auto ty = y.tensors();
  for (std::size_t i = 0; i < tx.size(); ++i) {
    for (std::size_t k = 0; k < tx[i].data.size(); ++k) ty[i].data[k] += a * tx[i].data[k];
  }
}

double max_abs_diff(const ModelParams& a, const ModelParams& b) {
  require_same_shape(a, b);
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  double worst = 0.0;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    for (std::size_t k = 0; k < ta[i].data.size(); ++k) {
      worst = std::max(worst, std::abs(ta[i].data[k] - tb[i].data[k]));
    }
  }
  return worst;
}

}  // namespace molrl::model
