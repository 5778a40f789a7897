//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/rl/trainer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "molrl/common/error.h"
#include "molrl/model/optimizer.h"

namespace molrl::rl {

void AgentConfig::validate() const {
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (num_steps < 0) throw ConfigError("num_steps must be >= 0");
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  if (!std::isfinite(sigma) || sigma < 0.0) throw ConfigError("sigma must be finite and >= 0");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(clip > 0.0)) throw ConfigError("clip must be positive");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

namespace {

void score_all(const scoring::ScoringFunction& scorer, EpisodeBatch& b, int threads) {
  const std::size_t n = b.smiles.size();
  std::vector<scoring::Score> out(n);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = scorer.score(b.smiles[i]);
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(std::min(n, w * chunk), std::min(n, (w + 1) * chunk));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  b.scores.resize(n);
  b.valid.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = out[i].value;
    if (!(s >= -1.0 && s <= 1.0)) {
      throw DataError("scorer '" + scorer.name() + "' returned " + std::to_string(s) + " for episode " +
                      std::to_string(i) + " (" + b.smiles[i] + "); scores must lie in [-1, 1]");
    }
    b.scores[i] = s;
    b.valid[i] = out[i].valid;
  }
}

}  // namespace

EpisodeBatch collect_episodes(const model::ModelParams& agent, const model::ModelParams& prior,
                              const smiles::Vocabulary& vocab, const scoring::ScoringFunction& scorer,
                              const AgentConfig& config, Rng& rng) {
  if (!(agent.shape == prior.shape)) throw DataError("agent and prior shapes differ");
  if (vocab.size() != agent.shape.vocab_size) throw DataError("vocabulary does not match the model");
  EpisodeBatch b;
  b.sequences = model::sample_batch(agent, config.batch_size, config.max_len, rng);
  std::vector<model::ActionSequence> actions;
  for (const auto& s : b.sequences) {
    b.smiles.push_back(vocab.decode(s.tokens));
    b.agent_logp.push_back(s.log_likelihood);
    actions.push_back(s.actions);
  }
  const model::ForwardTape pt = model::forward(prior, actions);
  b.prior_logp = pt.total_logp;
  b.prior_steps = pt.step_logp;
  score_all(scorer, b, config.threads);
  return b;
}

StrategyLoss strategy_loss(const EpisodeBatch& batch, const std::vector<std::vector<double>>& agent_steps,
                           Strategy strategy, double sigma) {
  const std::size_t n = batch.size();
  if (n == 0) throw DataError("empty episode batch");
  if (agent_steps.size() != n) throw DataError("agent step log-probabilities not congruent with batch");
  const double inv = 1.0 / static_cast<double>(n);
  StrategyLoss out;
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& steps = agent_steps[i];
    double a = 0.0;
    for (const double v : steps) a += v;
    const double s = batch.scores[i];
    const double p = batch.prior_logp[i];
    double loss = 0.0;
    double w = 0.0;
    switch (strategy) {
      case Strategy::kAgent: {
        const double u = augmented_likelihood(p, s, sigma);
        loss = agent_episode_loss(u, a);
        w = agent_episode_weight(u, a);
        break;
      }
      case Strategy::kActionBasis:
        loss = action_basis_loss(batch.prior_steps[i], steps, s, sigma);
        w = action_basis_weight(batch.prior_steps[i], steps, s, sigma);
        break;
      case Strategy::kReinforce:
        loss = reinforce_loss(steps, s);
        w = -s;
        break;
      case Strategy::kReinforcePrior:
        loss = reinforce_prior_loss(steps, p, s, sigma);
        w = -augmented_likelihood(p, s, sigma);
        break;
    }
    out.loss += loss * inv;
    out.weights[i].assign(steps.size(), w * inv);
  }
  return out;
}

model::ModelParams strategy_gradient(const model::ModelParams& agent, const EpisodeBatch& batch, Strategy strategy,
                                     double sigma, double* loss) {
  std::vector<model::ActionSequence> actions;
  actions.reserve(batch.size());
  for (const auto& s : batch.sequences) actions.push_back(s.actions);
  const model::ForwardTape tape = model::forward(agent, actions);
  const StrategyLoss sl = strategy_loss(batch, tape.step_logp, strategy, sigma);
  if (loss) *loss = sl.loss;
  return model::backward(agent, tape, sl.weights);
}

TrainStats train_step(model::ModelParams& agent, const model::ModelParams& prior, const smiles::Vocabulary& vocab,
                      const scoring::ScoringFunction& scorer, const AgentConfig& config, Rng& rng,
                      EpisodeBatch* episodes) {
  config.validate();
  EpisodeBatch b = collect_episodes(agent, prior, vocab, scorer, config, rng);
  TrainStats st;
  model::ModelParams grad = strategy_gradient(agent, b, config.strategy, config.sigma, &st.loss);
  if (!std::isfinite(st.loss) || !grad.all_finite()) throw NumericalError("non-finite agent loss or gradient");
  model::clip_gradients(grad, config.clip);
  model::sgd_step(agent, grad, config.learning_rate);

  const double inv = 1.0 / static_cast<double>(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    st.mean_score += b.scores[i] * inv;
    st.fraction_valid += (b.valid[i] ? 1.0 : 0.0) * inv;
    st.mean_agent_logp += b.agent_logp[i] * inv;
    st.mean_augmented_logp += augmented_likelihood(b.prior_logp[i], b.scores[i], config.sigma) * inv;
  }
  if (episodes) *episodes = std::move(b);
  return st;
}

AgentTrainer::AgentTrainer(const model::ModelParams& prior, smiles::Vocabulary vocab,
                           const scoring::ScoringFunction& scorer, AgentConfig config)
    : prior_(prior), vocab_(std::move(vocab)), scorer_(scorer), config_(config), agent_(prior), rng_(config.seed) {
  config_.validate();
}

TrainStats AgentTrainer::step(EpisodeBatch* episodes) {
  TrainStats st = train_step(agent_, prior_, vocab_, scorer_, config_, rng_, episodes);
  st.step = ++steps_;
  return st;
}

}  // namespace molrl::rl
