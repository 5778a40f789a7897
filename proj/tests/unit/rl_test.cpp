//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "molrl/common/error.h"
#include "molrl/common/rng.h"
#include "molrl/model/network.h"
#include "molrl/model/optimizer.h"
#include "molrl/model/sampler.h"
#include "molrl/rl/losses.h"
#include "molrl/rl/trace.h"
#include "molrl/rl/trainer.h"
#include "molrl/scoring/scoring.h"
#include "molrl/smiles/vocabulary.h"
#include "oracles.h"

namespace molrl::rl {
namespace {

using model::ModelParams;

ModelParams tiny_model(int v, int h, int l, std::uint64_t seed) {
  Rng rng(seed);
  model::InitOptions init;
  init.scale = 0.5;
  init.update_gate_bias = 0.0;
  return ModelParams::random(model::ModelShape{v, l, h, false}, rng, init);
}

// Builds an episode batch from sampled agent sequences, prior likelihoods and
// the given scores.
EpisodeBatch make_batch(const ModelParams& agent, const ModelParams& prior, const std::vector<double>& scores,
                        std::uint64_t seed) {
  Rng rng(seed);
  EpisodeBatch b;
  b.sequences = model::sample_batch(agent, static_cast<int>(scores.size()), 8, rng);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto lk = model::action_likelihood(prior, b.sequences[i].actions);
    b.agent_logp.push_back(b.sequences[i].log_likelihood);
    b.prior_logp.push_back(lk.total_logp);
    b.prior_steps.push_back(lk.step_logp);
    b.scores.push_back(scores[i]);
    b.valid.push_back(true);
    b.smiles.emplace_back();
  }
  return b;
}

double batch_loss(const ModelParams& agent, const EpisodeBatch& b, Strategy s, double sigma) {
  std::vector<model::ActionSequence> actions;
  for (const auto& q : b.sequences) actions.push_back(q.actions);
  return strategy_loss(b, model::forward(agent, actions).step_logp, s, sigma).loss;
}

TEST(AugmentedLikelihoodTest, Examples) {
  EXPECT_NEAR(augmented_likelihood(-12.7, 1.0, 15.0), 2.3, 1e-12);
  EXPECT_EQ(augmented_likelihood(-3.5, 0.7, 0.0), -3.5);
  EXPECT_EQ(augmented_likelihood(-10.0, -1.0, 2.0), -12.0);
}

TEST(AgentLossTest, Examples) {
  EXPECT_EQ(agent_episode_loss(-5.0, -5.0), 0.0);
  EXPECT_EQ(agent_episode_loss(-3.0, -5.0), 4.0);
  EXPECT_EQ(agent_episode_loss(-7.0, -5.0), 4.0);
  EXPECT_EQ(agent_episode_weight(-3.0, -5.0), -4.0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double u = rng.uniform(-50, 5), a = rng.uniform(-50, 0);
    EXPECT_GE(agent_episode_loss(u, a), 0.0);
    const double h = 1e-6;
    const double fd = (agent_episode_loss(u, a + h) - agent_episode_loss(u, a - h)) / (2 * h);
    EXPECT_NEAR(agent_episode_weight(u, a), fd, 1e-5);
  }
}

TEST(ActionBasisLossTest, Examples) {
  const std::vector<double> steps{-0.5, -1.25, -0.1};
  EXPECT_EQ(action_basis_loss(steps, steps, 0.0, 2.0), 0.0);
  EXPECT_EQ(action_basis_loss(steps, steps, 1.0, 8.0), 64.0);
  const std::vector<double> prior{-0.4, -1.0, -0.7}, agent{-0.9, -0.3, -0.2};
  const double p = -2.1, a = -1.4;
  EXPECT_NEAR(action_basis_loss(prior, agent, 0.5, 3.0), agent_episode_loss(augmented_likelihood(p, 0.5, 3.0), a),
              1e-12);
  EXPECT_THROW(action_basis_loss(prior, std::vector<double>{-1.0}, 0.5, 3.0), DataError);
}

TEST(ReinforceLossTest, Examples) {
  const std::vector<double> steps{-0.5, -1.25, -0.1};
  EXPECT_EQ(reinforce_loss(steps, 0.0), 0.0);
  const std::vector<double> twice{-1.0, -2.5, -0.2};
  EXPECT_NEAR(reinforce_loss(twice, 0.7), 2 * reinforce_loss(steps, 0.7), 1e-12);
  EXPECT_NEAR(reinforce_loss(steps, 1.0), 1.85, 1e-12);
  EXPECT_NEAR(reinforce_prior_loss(steps, -4.0, 0.3, 0.0), reinforce_loss(steps, -4.0), 1e-12);
  EXPECT_EQ(reinforce_prior_loss(steps, -2.0, 1.0, 2.0), 0.0);
}

TEST(ReinforceLossTest, DescentRaisesLikelihoodOfRewardedSequence) {
  // Two-token toy model; a positively scored sequence must become more likely
  // after a small step against the finite-difference gradient of the loss.
  const ModelParams start = tiny_model(4, 3, 1, 2);
  const model::ActionSequence seq{0, 1, 3};
  auto loss_at = [&](const ModelParams& p) {
    return reinforce_loss(model::action_likelihood(p, seq).step_logp, 1.0);
  };
  ModelParams fd = ModelParams::zeros(start.shape);
  ModelParams probe = start;
  auto pt = probe.tensors();
  auto ft = fd.tensors();
  for (std::size_t t = 0; t < pt.size(); ++t) {
    for (std::size_t i = 0; i < pt[t].data.size(); ++i) {
      const double x = pt[t].data[i];
      pt[t].data[i] = x + 1e-6;
      const double up = loss_at(probe);
      pt[t].data[i] = x - 1e-6;
      const double down = loss_at(probe);
      pt[t].data[i] = x;
      ft[t].data[i] = (up - down) / 2e-6;
    }
  }
  ModelParams next = start;
  model::sgd_step(next, fd, 1e-2);
  EXPECT_GT(model::action_likelihood(next, seq).total_logp, model::action_likelihood(start, seq).total_logp);
}

TEST(EquivalenceRewardTest, Examples) {
  EXPECT_EQ(reinforce_equivalence_reward(-6.0, -6.0), 0.0);
  EXPECT_DOUBLE_EQ(reinforce_equivalence_reward(-6.0, -8.0), -0.5);
  EXPECT_THROW(reinforce_equivalence_reward(-1.0, 0.0), NumericalError);
  // Differentiating r(A) * A through A recovers the agent weight.
  for (double a : {-8.0, -3.0, -0.5}) {
    for (double u : {-9.0, -2.0, 1.0}) {
      EXPECT_NEAR(reinforce_equivalence_weight(u, a), agent_episode_weight(u, a), 1e-12);
    }
  }
}

TEST(StrategyTest, Names) {
  for (auto s : {Strategy::kAgent, Strategy::kActionBasis, Strategy::kReinforce, Strategy::kReinforcePrior}) {
    EXPECT_EQ(strategy_from_string(to_string(s)), s);
  }
  EXPECT_THROW(strategy_from_string("ppo"), ConfigError);
}

TEST(StrategyGradientTest, MatchesFiniteDifferencesForAllStrategies) {
  const ModelParams prior = tiny_model(5, 4, 1, 3);
  const ModelParams agent = tiny_model(5, 4, 1, 4);
  const EpisodeBatch b = make_batch(agent, prior, {0.5, -1.0, 1.0, 0.0}, 7);
  for (auto s : {Strategy::kAgent, Strategy::kActionBasis, Strategy::kReinforce, Strategy::kReinforcePrior}) {
    double loss = 0.0;
    const ModelParams g = strategy_gradient(agent, b, s, 2.0, &loss);
    EXPECT_NEAR(loss, batch_loss(agent, b, s, 2.0), 1e-12);
    for (const auto& e : oracle::finite_difference_check(
             agent, g, [&](const ModelParams& p) { return batch_loss(p, b, s, 2.0); })) {
      EXPECT_LT(e.rel_error, 1e-4) << to_string(s) << " " << e.name;
    }
  }
}

TEST(StrategyGradientTest, AgentLossAtInitEqualsSquaredScoreTerm) {
  const ModelParams prior = tiny_model(6, 4, 2, 3);
  const std::vector<double> scores{1.0, -1.0, 0.0, 0.5};
  const EpisodeBatch b = make_batch(prior, prior, scores, 9);
  const double sigma = 3.0;
  double want = 0.0;
  for (double s : scores) want += (sigma * s) * (sigma * s) / 4.0;
  EXPECT_NEAR(batch_loss(prior, b, Strategy::kAgent, sigma), want, 1e-10);
}

class CountingScorer final : public scoring::ScoringFunction {
 public:
  explicit CountingScorer(double out) : out_(out) {}
  scoring::Score score(std::string_view) const override { return {out_, true}; }
  std::string name() const override { return "const"; }

 private:
  double out_;
};

TEST(TrainStepTest, RejectsOutOfRangeScores) {
  const auto vocab = smiles::Vocabulary::build({"CCO"});
  const ModelParams prior = tiny_model(vocab.size(), 4, 1, 1);
  ModelParams agent = prior;
  CountingScorer bad(1.5);
  AgentConfig cfg;
  cfg.batch_size = 4;
  cfg.max_len = 5;
  Rng rng(1);
  EXPECT_THROW(train_step(agent, prior, vocab, bad, cfg, rng), DataError);
}

TEST(TrainStepTest, PriorUnchangedAndSameBatchLossDecreases) {
  const auto vocab = smiles::Vocabulary::build({"CCO", "c1ccsc1", "CCN"});
  const ModelParams prior = tiny_model(vocab.size(), 8, 1, 1);
  const auto checksum = prior.checksum();
  scoring::NoSulphurScorer scorer;
  for (auto s : {Strategy::kAgent, Strategy::kActionBasis, Strategy::kReinforce, Strategy::kReinforcePrior}) {
    AgentConfig cfg;
    cfg.strategy = s;
    cfg.batch_size = 16;
    cfg.max_len = 12;
    cfg.learning_rate = 1e-4;
    cfg.seed = 3;
    ModelParams agent = prior;
    Rng rng(cfg.seed);
    EpisodeBatch episodes;
    const ModelParams before = agent;
    train_step(agent, prior, vocab, scorer, cfg, rng, &episodes);
    const double l0 = batch_loss(before, episodes, s, cfg.sigma);
    const double l1 = batch_loss(agent, episodes, s, cfg.sigma);
    EXPECT_LT(l1, l0) << to_string(s);
    EXPECT_EQ(prior.checksum(), checksum);
  }
}

TEST(TrainStepTest, ZeroSigmaPullsPerturbedAgentTowardPrior) {
  const auto vocab = smiles::Vocabulary::build({"CCO", "c1ccsc1", "CCN"});
  const ModelParams prior = tiny_model(vocab.size(), 8, 1, 1);
  scoring::NoSulphurScorer scorer;
  AgentConfig cfg;
  cfg.sigma = 0.0;
  cfg.batch_size = 32;
  cfg.max_len = 12;
  cfg.learning_rate = 0.02;
  cfg.seed = 5;
  AgentTrainer trainer(prior, vocab, scorer, cfg);
  Rng noise(8);
  for (auto& t : trainer.mutable_agent().tensors()) {
    for (double& x : t.data) x += noise.uniform(-0.3, 0.3);
  }
  Rng probe_rng(10);
  const auto probes = model::sample_batch(prior, 50, 12, probe_rng);
  auto gap = [&] {
    double g = 0.0;
    for (const auto& p : probes) {
      g += std::abs(model::action_likelihood(trainer.agent(), p.actions).total_logp - p.log_likelihood);
    }
    return g / static_cast<double>(probes.size());
  };
  const double start = gap();
  for (int i = 0; i < 60; ++i) trainer.step();
  EXPECT_LT(gap(), start);
  EXPECT_EQ(trainer.steps_done(), 60);
}

TEST(TrainStepTest, Deterministic) {
  const auto vocab = smiles::Vocabulary::build({"CCO", "c1ccsc1", "CCN"});
  const ModelParams prior = tiny_model(vocab.size(), 8, 1, 1);
  scoring::NoSulphurScorer scorer;
  AgentConfig cfg;
  cfg.batch_size = 16;
  cfg.max_len = 12;
  cfg.seed = 4;
  AgentTrainer a(prior, vocab, scorer, cfg);
  cfg.threads = 3;
  AgentTrainer b(prior, vocab, scorer, cfg);
  for (int i = 0; i < 5; ++i) {
    const TrainStats x = a.step(), y = b.step();
    EXPECT_EQ(x.loss, y.loss);
    EXPECT_EQ(x.mean_score, y.mean_score);
  }
  EXPECT_EQ(model::max_abs_diff(a.agent(), b.agent()), 0.0);
}

TEST(AgentConfigTest, Validation) {
  AgentConfig cfg;
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = AgentConfig{};
  cfg.sigma = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = AgentConfig{};
  cfg.sigma = std::nan("");
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(TraceTest, ColumnsAreDistributions) {
  const auto vocab = smiles::Vocabulary::build({"CCO", "c1ccsc1"});
  const ModelParams p = tiny_model(vocab.size(), 6, 2, 2);
  const auto seq = vocab.encode("c1ccsc1");
  const Eigen::MatrixXd t = probability_trace(p, seq);
  EXPECT_EQ(t.rows(), vocab.size());
  EXPECT_EQ(t.cols(), static_cast<long>(seq.length()) + 1);
  for (long c = 0; c < t.cols(); ++c) EXPECT_NEAR(t.col(c).sum(), 1.0, 1e-9);
  const std::string csv = trace_csv(t, vocab, seq);
  EXPECT_EQ(csv.substr(0, 13), "step,emitted,");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), t.cols() + 1);
}

TEST(TraceTest, UniformModel) {
  const auto vocab = smiles::Vocabulary::build({"CCO"});
  const ModelParams p = ModelParams::zeros(model::ModelShape{vocab.size(), 1, 3, false});
  const Eigen::MatrixXd t = probability_trace(p, vocab.encode("CO"));
  EXPECT_LT((t.array() - 1.0 / vocab.size()).abs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace molrl::rl
