//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_RL_LOSSES_H_
#define MOLRL_RL_LOSSES_H_

#include <span>
#include <string>
#include <string_view>

namespace molrl::rl {

// All four strategies are losses to be minimized. With A = sum_t log pi(a_t)
// under the agent, P = the prior's log-likelihood of the same episode and
// S its score, the per-episode loss and its derivative with respect to each
// chosen-action log-probability are:
//
//   strategy         loss                                   d loss / d log pi(a_t)
//   agent            (P + sigma S - A)^2                    -2 (P + sigma S - A)
//   action_basis     (sum_t [log pi_P - log pi] + sigma S)^2  -2 (sum_t [...] + sigma S)
//   reinforce        -S A                                   -S
//   reinforce_prior  -(P + sigma S) A                       -(P + sigma S)
//
// The REINFORCE rows carry an explicit minus so that descent raises the
// likelihood of well-scored episodes. Batch losses are means over episodes.
enum class Strategy { kAgent, kActionBasis, kReinforce, kReinforcePrior };

const char* to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);  // throws ConfigError

double augmented_likelihood(double prior_logp, double score, double sigma);

double agent_episode_loss(double aug_logp, double agent_logp);
double agent_episode_weight(double aug_logp, double agent_logp);

// Throws DataError if the step lists differ in length.
double action_basis_loss(std::span<const double> prior_steps, std::span<const double> agent_steps, double score,
                         double sigma);
double action_basis_weight(std::span<const double> prior_steps, std::span<const double> agent_steps, double score,
                           double sigma);

double reinforce_loss(std::span<const double> agent_steps, double score);
double reinforce_prior_loss(std::span<const double> agent_steps, double prior_logp, double score, double sigma);

// r = (aug - agent)^2 / agent, the terminal reward under which the REINFORCE
// surrogate r(A) * A reproduces the agent loss. Throws NumericalError when
// agent_logp is 0.
double reinforce_equivalence_reward(double aug_logp, double agent_logp);

// d/dA of r(A) * A, i.e. r + A r'(A), evaluated from r and its derivative.
// Algebraically equal to agent_episode_weight.
double reinforce_equivalence_weight(double aug_logp, double agent_logp);

}  // namespace molrl::rl

#endif  // MOLRL_RL_LOSSES_H_
