//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/rl/losses.h"

#include <numeric>

#include "molrl/common/error.h"

namespace molrl::rl {
namespace {

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double action_basis_residual(std::span<const double> prior_steps, std::span<const double> agent_steps, double score,
                             double sigma) {
  if (prior_steps.size() != agent_steps.size()) throw DataError("action_basis: step lists differ in length");
  double r = sigma * score;
  for (std::size_t t = 0; t < prior_steps.size(); ++t) r += prior_steps[t] - agent_steps[t];
  return r;
}

}  // namespace

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kAgent: return "agent";
    case Strategy::kActionBasis: return "action_basis";
    case Strategy::kReinforce: return "reinforce";
    case Strategy::kReinforcePrior: return "reinforce_prior";
  }
  return "?";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "agent") return Strategy::kAgent;
  if (name == "action_basis") return Strategy::kActionBasis;
  if (name == "reinforce") return Strategy::kReinforce;
  if (name == "reinforce_prior") return Strategy::kReinforcePrior;
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

double augmented_likelihood(double prior_logp, double score, double sigma) { return prior_logp + sigma * score; }

double agent_episode_loss(double aug_logp, double agent_logp) {
  const double d = aug_logp - agent_logp;
  return d * d;
}

double agent_episode_weight(double aug_logp, double agent_logp) { return -2.0 * (aug_logp - agent_logp); }

double action_basis_loss(std::span<const double> prior_steps, std::span<const double> agent_steps, double score,
                         double sigma) {
  const double r = action_basis_residual(prior_steps, agent_steps, score, sigma);
  return r * r;
}

double action_basis_weight(std::span<const double> prior_steps, std::span<const double> agent_steps, double score,
                           double sigma) {
  return -2.0 * action_basis_residual(prior_steps, agent_steps, score, sigma);
}

double reinforce_loss(std::span<const double> agent_steps, double score) { return -score * sum(agent_steps); }

double reinforce_prior_loss(std::span<const double> agent_steps, double prior_logp, double score, double sigma) {
  return -augmented_likelihood(prior_logp, score, sigma) * sum(agent_steps);
}

double reinforce_equivalence_reward(double aug_logp, double agent_logp) {
  if (agent_logp == 0.0) throw NumericalError("equivalence reward undefined for log P = 0");
  const double d = aug_logp - agent_logp;
  return d * d / agent_logp;
}

double reinforce_equivalence_weight(double aug_logp, double agent_logp) {
  const double r = reinforce_equivalence_reward(aug_logp, agent_logp);
  const double d = aug_logp - agent_logp;
  const double dr = (-2.0 * d * agent_logp - d * d) / (agent_logp * agent_logp);
  return r + agent_logp * dr;
}

}  // namespace molrl::rl
