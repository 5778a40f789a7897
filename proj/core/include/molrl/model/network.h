//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_MODEL_NETWORK_H_
#define MOLRL_MODEL_NETWORK_H_

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "molrl/model/params.h"
#include "molrl/smiles/vocabulary.h"

namespace molrl::model {

// An episode as the model sees it: the tokens chosen at each step. A
// finished episode ends with EOS; a truncated one does not. Step t is fed
// GO (t = 0) or the action of step t-1.
using ActionSequence = std::vector<int>;

ActionSequence to_actions(const smiles::TokenSequence& seq, const ModelShape& shape);

// Activations of a teacher-forced pass over a batch, kept for BPTT. Step
// matrices hold only the sequences still running, longest first: column k
// of every step belongs to batch entry order[k].
struct ForwardTape {
  int batch = 0;
  int steps = 0;
  std::vector<int> order;
  std::vector<std::vector<int>> inputs;   // [step][column]
  std::vector<std::vector<int>> targets;  // [step][column]
  // [step][layer]
  std::vector<std::vector<Eigen::MatrixXd>> z, r, c, h;
  std::vector<Eigen::MatrixXd> probs;  // [step] V x active
  std::vector<std::vector<double>> step_logp;  // [column][step]
  std::vector<double> total_logp;  // [column]
};

// Teacher-forced pass from the zero state. Throws DataError on ids outside
// the vocabulary.
ForwardTape forward(const ModelParams& params, std::span<const ActionSequence> batch);

// Gradient of sum_{i,t} weight[i][t] * log pi(a_{i,t}). Weights are
// d(loss)/d(log pi) per chosen action, so the result is a loss gradient.
ModelParams backward(const ModelParams& params, const ForwardTape& tape,
                     const std::vector<std::vector<double>>& step_weights);

struct Likelihood {
  double total_logp = 0.0;
  std::vector<double> step_logp;
  std::vector<Eigen::VectorXd> step_probs;  // one distribution per step
};

// log P of GO + seq + EOS, including the EOS prediction step.
Likelihood forward_likelihood(const ModelParams& params, const smiles::TokenSequence& seq);

// Same for an arbitrary action sequence (no EOS appended).
Likelihood action_likelihood(const ModelParams& params, const ActionSequence& actions);

// Incremental evaluation for sampling: feeds one token per column and
// returns the next-token log-probabilities (V x B).
class Stepper {
 public:
  Stepper(const ModelParams& params, int batch);

  const Eigen::MatrixXd& step(const std::vector<int>& inputs);

  // Drops all columns not listed in `columns` (ascending indices).
  void keep_columns(const std::vector<int>& columns);

  int batch() const { return batch_; }

 private:
  const ModelParams& params_;
  Eigen::MatrixXd table_;
  std::vector<Eigen::MatrixXd> state_;
  Eigen::MatrixXd logp_;
  int batch_;
};

struct LossAndGrad {
  double loss = 0.0;
  ModelParams grad;
};

// Mean negative log-likelihood of GO + seq + EOS over the batch, with its
// BPTT gradient. Throws DataError on an empty batch.
LossAndGrad mle_loss_and_grad(const ModelParams& params, std::span<const smiles::TokenSequence> batch);

}  // namespace molrl::model

#endif  // MOLRL_MODEL_NETWORK_H_
