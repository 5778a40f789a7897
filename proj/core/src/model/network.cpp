//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/model/network.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "molrl/common/error.h"

namespace molrl::model {
namespace {

using Eigen::MatrixXd;

// Layer-0 input projection as a V-column table: W0 * E, or W0 itself when
// tokens are fed one-hot.
MatrixXd input_table(const ModelParams& p) {
  const auto& w0 = p.layers.front().w;
  if (p.shape.one_hot_input) return w0;
  return w0 * p.embedding;
}

MatrixXd gather_columns(const MatrixXd& table, const std::vector<int>& ids) {
  MatrixXd out(table.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t j = 0; j < ids.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = table.col(ids[j]);
  return out;
}

void sigmoid_inplace(MatrixXd& m) { m = (1.0 + (-m.array()).exp()).inverse().matrix(); }

// One GRU step for a batch. `a` holds the input projections W*x (without
// bias) stacked as [update; reset; candidate].
void gru_cell(const GruLayer& layer, MatrixXd a, const MatrixXd& hp, MatrixXd& z, MatrixXd& r,
              MatrixXd& c, MatrixXd& hn) {
  const Eigen::Index hidden = hp.rows();
  a.colwise() += layer.b;
  MatrixXd zr = a.topRows(2 * hidden);
  zr.noalias() += layer.u.topRows(2 * hidden) * hp;
  sigmoid_inplace(zr);
  z = zr.topRows(hidden);
  r = zr.bottomRows(hidden);
  c = a.bottomRows(hidden);
  c.noalias() += layer.u.bottomRows(hidden) * r.cwiseProduct(hp);
  c = c.array().tanh().matrix();
  hn = hp + z.cwiseProduct(c - hp);
}

// Column-wise log-softmax of the output layer, max-subtracted.
MatrixXd output_logp(const ModelParams& p, const MatrixXd& top) {
  MatrixXd logits = p.out_w * top;
  logits.colwise() += p.out_b;
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    auto col = logits.col(j);
    const double mx = col.maxCoeff();
    col.array() -= mx + std::log((col.array() - mx).exp().sum());
  }
  return logits;
}

}  // namespace

ActionSequence to_actions(const smiles::TokenSequence& seq, const ModelShape& shape) {
  ActionSequence a = seq.ids;
  a.push_back(shape.eos_id());
  return a;
}

ForwardTape forward(const ModelParams& p, std::span<const ActionSequence> batch) {
  const int vocab = p.shape.vocab_size;
  const int hidden = p.shape.hidden_size;
  const int layers = p.shape.num_layers;
  const int nb = static_cast<int>(batch.size());

  ForwardTape t;
  t.batch = nb;
  for (const auto& seq : batch) {
    t.steps = std::max(t.steps, static_cast<int>(seq.size()));
    for (const int id : seq) {
      if (id < 0 || id >= vocab) throw DataError("token id " + std::to_string(id) + " out of range");
    }
  }
  t.step_logp.assign(static_cast<std::size_t>(nb), {});
  t.total_logp.assign(static_cast<std::size_t>(nb), 0.0);
  if (nb == 0 || t.steps == 0) return t;

  // Longest sequences first, so the columns still running at any step form
  // a prefix and finished ones cost nothing.
  t.order.resize(static_cast<std::size_t>(nb));
  std::iota(t.order.begin(), t.order.end(), 0);
  std::stable_sort(t.order.begin(), t.order.end(),
                   [&](int a, int b) { return batch[static_cast<std::size_t>(a)].size() > batch[static_cast<std::size_t>(b)].size(); });

  const MatrixXd table = input_table(p);
  std::vector<MatrixXd> state(static_cast<std::size_t>(layers), MatrixXd::Zero(hidden, nb));

  for (int s = 0; s < t.steps; ++s) {
    int active = 0;
    while (active < nb && static_cast<int>(batch[static_cast<std::size_t>(t.order[static_cast<std::size_t>(active)])].size()) > s) {
      ++active;
    }
    std::vector<int> in(static_cast<std::size_t>(active));
    std::vector<int> target(static_cast<std::size_t>(active));
    for (int k = 0; k < active; ++k) {
      const auto& seq = batch[static_cast<std::size_t>(t.order[static_cast<std::size_t>(k)])];
      in[static_cast<std::size_t>(k)] = s == 0 ? p.shape.go_id() : seq[static_cast<std::size_t>(s - 1)];
      target[static_cast<std::size_t>(k)] = seq[static_cast<std::size_t>(s)];
    }

    std::vector<MatrixXd> zs(static_cast<std::size_t>(layers)), rs = zs, cs = zs, hs = zs;
    MatrixXd below;
    for (int l = 0; l < layers; ++l) {
      const auto ul = static_cast<std::size_t>(l);
      const auto& layer = p.layers[ul];
      MatrixXd a = l == 0 ? gather_columns(table, in) : MatrixXd(layer.w * below);
      if (state[ul].cols() != active) state[ul].conservativeResize(Eigen::NoChange, active);
      gru_cell(layer, std::move(a), state[ul], zs[ul], rs[ul], cs[ul], hs[ul]);
      state[ul] = hs[ul];
      below = hs[ul];
    }

    MatrixXd logits = output_logp(p, below);
    for (int k = 0; k < active; ++k) {
      const auto j = static_cast<std::size_t>(t.order[static_cast<std::size_t>(k)]);
      const double lp = logits(target[static_cast<std::size_t>(k)], k);
      t.step_logp[j].push_back(lp);
      t.total_logp[j] += lp;
    }
    t.probs.push_back(logits.array().exp().matrix());
    t.inputs.push_back(std::move(in));
    t.targets.push_back(std::move(target));
    t.z.push_back(std::move(zs));
    t.r.push_back(std::move(rs));
    t.c.push_back(std::move(cs));
    t.h.push_back(std::move(hs));
  }
  return t;
}

ModelParams backward(const ModelParams& p, const ForwardTape& t,
                     const std::vector<std::vector<double>>& weights) {
  const int vocab = p.shape.vocab_size;
  const int hidden = p.shape.hidden_size;
  const int layers = p.shape.num_layers;
  const int nb = t.batch;
  if (static_cast<int>(weights.size()) != nb) throw DataError("backward: weight rows != batch size");
  for (int j = 0; j < nb; ++j) {
    if (weights[static_cast<std::size_t>(j)].size() != t.step_logp[static_cast<std::size_t>(j)].size()) {
      throw DataError("backward: weights do not match episode length");
    }
  }

  ModelParams g = ModelParams::zeros(p.shape);
  MatrixXd table_grad = MatrixXd::Zero(3 * hidden, vocab);
  std::vector<MatrixXd> carry(static_cast<std::size_t>(layers));

  for (int s = t.steps - 1; s >= 0; --s) {
    const auto us = static_cast<std::size_t>(s);
    const auto& probs = t.probs[us];
    const auto active = static_cast<Eigen::Index>(t.targets[us].size());
    MatrixXd dlogits(vocab, active);
    for (Eigen::Index k = 0; k < active; ++k) {
      const auto j = static_cast<std::size_t>(t.order[static_cast<std::size_t>(k)]);
      const double w = weights[j][us];
      dlogits.col(k) = -w * probs.col(k);
      dlogits(t.targets[us][static_cast<std::size_t>(k)], k) += w;
    }
    const auto& top = t.h[us].back();
    g.out_w.noalias() += dlogits * top.transpose();
    g.out_b += dlogits.rowwise().sum();
    MatrixXd dh = p.out_w.transpose() * dlogits;

    for (int l = layers - 1; l >= 0; --l) {
      const auto ul = static_cast<std::size_t>(l);
      const auto& layer = p.layers[ul];
      const MatrixXd hp = s > 0 ? MatrixXd(t.h[us - 1][ul].leftCols(active)) : MatrixXd::Zero(hidden, active);
      const MatrixXd& z = t.z[us][ul];
      const MatrixXd& r = t.r[us][ul];
      const MatrixXd& c = t.c[us][ul];
      // Columns that ended at a later step carry gradient back into this one.
      if (carry[ul].size() > 0) dh.leftCols(carry[ul].cols()) += carry[ul];

      MatrixXd da(3 * hidden, active);
      da.bottomRows(hidden) = (dh.array() * z.array() * (1.0 - c.array().square())).matrix();
      const MatrixXd rh = r.cwiseProduct(hp);
      auto& gl = g.layers[ul];
      gl.u.bottomRows(hidden).noalias() += da.bottomRows(hidden) * rh.transpose();
      const MatrixXd drh = layer.u.bottomRows(hidden).transpose() * da.bottomRows(hidden);
      da.topRows(hidden) = (dh.array() * (c - hp).array() * z.array() * (1.0 - z.array())).matrix();
      da.middleRows(hidden, hidden) = (drh.array() * hp.array() * r.array() * (1.0 - r.array())).matrix();
      gl.u.topRows(2 * hidden).noalias() += da.topRows(2 * hidden) * hp.transpose();
      gl.b += da.rowwise().sum();

      MatrixXd dhp = (dh.array() * (1.0 - z.array()) + drh.array() * r.array()).matrix();
      dhp.noalias() += layer.u.topRows(2 * hidden).transpose() * da.topRows(2 * hidden);
      carry[ul] = std::move(dhp);

      if (l > 0) {
        const auto& below = t.h[us][ul - 1];
        gl.w.noalias() += da * below.transpose();
        dh = layer.w.transpose() * da;
      } else {
        const auto& in = t.inputs[us];
        for (Eigen::Index k = 0; k < active; ++k) table_grad.col(in[static_cast<std::size_t>(k)]) += da.col(k);
      }
    }
  }

  if (p.shape.one_hot_input) {
    g.layers.front().w = table_grad;
  } else {
    g.layers.front().w.noalias() = table_grad * p.embedding.transpose();
    g.embedding.noalias() = p.layers.front().w.transpose() * table_grad;
  }
  return g;
}

Stepper::Stepper(const ModelParams& params, int batch)
    : params_(params),
      table_(input_table(params)),
      state_(static_cast<std::size_t>(params.shape.num_layers),
             MatrixXd::Zero(params.shape.hidden_size, batch)),
      batch_(batch) {}

const MatrixXd& Stepper::step(const std::vector<int>& inputs) {
  if (static_cast<int>(inputs.size()) != batch_) throw DataError("Stepper: input count != batch");
  for (const int id : inputs) {
    if (id < 0 || id >= params_.shape.vocab_size) throw DataError("token id " + std::to_string(id) + " out of range");
  }
  MatrixXd below, z, r, c;
  for (std::size_t l = 0; l < state_.size(); ++l) {
    const auto& layer = params_.layers[l];
    MatrixXd a = l == 0 ? gather_columns(table_, inputs) : MatrixXd(layer.w * below);
    MatrixXd hn;
    gru_cell(layer, std::move(a), state_[l], z, r, c, hn);
    state_[l] = std::move(hn);
    below = state_[l];
  }
  logp_ = output_logp(params_, below);
  return logp_;
}

void Stepper::keep_columns(const std::vector<int>& columns) {
  for (auto& h : state_) {
    MatrixXd kept(h.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) kept.col(static_cast<Eigen::Index>(j)) = h.col(columns[j]);
    h = std::move(kept);
  }
  batch_ = static_cast<int>(columns.size());
}

Likelihood action_likelihood(const ModelParams& params, const ActionSequence& actions) {
  const ActionSequence batch[] = {actions};
  const ForwardTape t = forward(params, batch);
  Likelihood out;
  out.total_logp = t.total_logp.front();
  out.step_logp = t.step_logp.front();
  for (int s = 0; s < t.steps; ++s) out.step_probs.emplace_back(t.probs[static_cast<std::size_t>(s)].col(0));
  return out;
}

Likelihood forward_likelihood(const ModelParams& params, const smiles::TokenSequence& seq) {
  return action_likelihood(params, to_actions(seq, params.shape));
}

LossAndGrad mle_loss_and_grad(const ModelParams& params, std::span<const smiles::TokenSequence> batch) {
  if (batch.empty()) throw DataError("mle_loss_and_grad: empty batch");
  std::vector<ActionSequence> actions;
  actions.reserve(batch.size());
  for (const auto& seq : batch) actions.push_back(to_actions(seq, params.shape));
  const ForwardTape t = forward(params, actions);
  const double scale = 1.0 / static_cast<double>(batch.size());
  LossAndGrad out;
  std::vector<std::vector<double>> w(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    out.loss -= t.total_logp[i] * scale;
    w[i].assign(actions[i].size(), -scale);
  }
  out.grad = backward(params, t, w);
  return out;
}

}  // namespace molrl::model
