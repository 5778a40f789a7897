//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_RL_TRAINER_H_
#define MOLRL_RL_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "molrl/common/rng.h"
#include "molrl/model/network.h"
#include "molrl/model/params.h"
#include "molrl/model/sampler.h"
#include "molrl/rl/losses.h"
#include "molrl/scoring/scoring.h"
#include "molrl/smiles/vocabulary.h"

namespace molrl::rl {

struct AgentConfig {
  Strategy strategy = Strategy::kAgent;
  double sigma = 2.0;
  double learning_rate = 5e-4;
  int batch_size = 128;
  int num_steps = 1000;
  int max_len = 100;
  std::uint64_t seed = 0;
  double clip = 3.0;
  int threads = 1;  // scoring workers; results do not depend on it

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct EpisodeBatch {
  std::vector<model::SampledSequence> sequences;
  std::vector<std::string> smiles;
  std::vector<double> agent_logp;
  std::vector<double> prior_logp;
  std::vector<std::vector<double>> prior_steps;
  std::vector<double> scores;
  std::vector<bool> valid;

  std::size_t size() const { return sequences.size(); }
};

struct TrainStats {
  std::int64_t step = 0;
  double mean_score = 0.0;
  double fraction_valid = 0.0;
  double mean_agent_logp = 0.0;
  double mean_augmented_logp = 0.0;
  double loss = 0.0;
};

// Samples batch_size episodes from the agent and scores them. Throws
// DataError naming the episode if a score falls outside [-1, 1].
EpisodeBatch collect_episodes(const model::ModelParams& agent, const model::ModelParams& prior,
                              const smiles::Vocabulary& vocab, const scoring::ScoringFunction& scorer,
                              const AgentConfig& config, Rng& rng);

// Mean strategy loss over the batch and the per-step weights d loss / d log pi
// for model::backward (already divided by the batch size).
struct StrategyLoss {
  double loss = 0.0;
  std::vector<std::vector<double>> weights;
};
StrategyLoss strategy_loss(const EpisodeBatch& batch, const std::vector<std::vector<double>>& agent_steps,
                           Strategy strategy, double sigma);

// Gradient of the batch loss with respect to the agent parameters.
model::ModelParams strategy_gradient(const model::ModelParams& agent, const EpisodeBatch& batch, Strategy strategy,
                                     double sigma, double* loss = nullptr);

// One on-policy update: sample, score, loss, BPTT, clip, gradient descent.
// `prior` is only read.
TrainStats train_step(model::ModelParams& agent, const model::ModelParams& prior, const smiles::Vocabulary& vocab,
                      const scoring::ScoringFunction& scorer, const AgentConfig& config, Rng& rng,
                      EpisodeBatch* episodes = nullptr);

// Owns the agent copy and the sampling stream for a training run.
class AgentTrainer {
 public:
  AgentTrainer(const model::ModelParams& prior, smiles::Vocabulary vocab, const scoring::ScoringFunction& scorer,
               AgentConfig config);

  TrainStats step(EpisodeBatch* episodes = nullptr);

  const model::ModelParams& agent() const { return agent_; }
  model::ModelParams& mutable_agent() { return agent_; }
  const AgentConfig& config() const { return config_; }
  std::int64_t steps_done() const { return steps_; }

 private:
  const model::ModelParams& prior_;
  smiles::Vocabulary vocab_;
  const scoring::ScoringFunction& scorer_;
  AgentConfig config_;
  model::ModelParams agent_;
  Rng rng_;
  std::int64_t steps_ = 0;
};

}  // namespace molrl::rl

#endif  // MOLRL_RL_TRAINER_H_
