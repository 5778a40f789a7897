//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/model/sampler.h"

#include <cmath>

#include "molrl/common/error.h"

namespace molrl::model {

int draw_token(const Eigen::Ref<const Eigen::VectorXd>& logp, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  int last = 0;
  for (Eigen::Index k = 0; k < logp.size(); ++k) {
    const double pk = std::exp(logp(k));
    if (pk <= 0.0) continue;
    acc += pk;
    last = static_cast<int>(k);
    if (u < acc) return last;
  }
  return last;  // rounding left u above the final cumulative sum
}

std::vector<SampledSequence> sample_batch(const ModelParams& params, int n, int max_len, Rng& rng) {
  if (n < 0) throw ConfigError("sample count must be >= 0");
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  std::vector<SampledSequence> out(static_cast<std::size_t>(n));
  if (n == 0) return out;

  const int eos = params.shape.eos_id();
  Stepper stepper(params, n);
  std::vector<int> live(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) live[static_cast<std::size_t>(j)] = j;
  std::vector<int> inputs(static_cast<std::size_t>(n), params.shape.go_id());

  for (int t = 0; t < max_len && !live.empty(); ++t) {
    const Eigen::MatrixXd& logp = stepper.step(inputs);
    std::vector<int> keep_pos;
    std::vector<int> next_live;
    std::vector<int> next_inputs;
    for (std::size_t pos = 0; pos < live.size(); ++pos) {
      auto& seq = out[static_cast<std::size_t>(live[pos])];
      const int tok = draw_token(logp.col(static_cast<Eigen::Index>(pos)), rng);
      const double lp = logp(tok, static_cast<Eigen::Index>(pos));
      seq.actions.push_back(tok);
      seq.step_logp.push_back(lp);
      seq.log_likelihood += lp;
      if (tok == eos) continue;
      seq.tokens.ids.push_back(tok);
      keep_pos.push_back(static_cast<int>(pos));
      next_live.push_back(live[pos]);
      next_inputs.push_back(tok);
    }
    if (next_live.size() != live.size()) stepper.keep_columns(keep_pos);
    live = std::move(next_live);
    inputs = std::move(next_inputs);
  }
  for (const int j : live) out[static_cast<std::size_t>(j)].truncated = true;
  return out;
}

SampledSequence sample(const ModelParams& params, int max_len, std::uint64_t seed) {
  Rng rng(seed);
  return std::move(sample_batch(params, 1, max_len, rng).front());
}

}  // namespace molrl::model
