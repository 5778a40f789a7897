//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_MODEL_SAMPLER_H_
#define MOLRL_MODEL_SAMPLER_H_

#include <cstdint>
#include <vector>

#include "molrl/common/rng.h"
#include "molrl/model/network.h"
#include "molrl/model/params.h"
#include "molrl/smiles/vocabulary.h"

namespace molrl::model {

struct SampledSequence {
  smiles::TokenSequence tokens;  // body only, no GO/EOS
  ActionSequence actions;        // tokens, plus EOS unless truncated
  double log_likelihood = 0.0;   // sum of step_logp
  std::vector<double> step_logp;
  bool truncated = false;        // max_len actions drawn without EOS
};

// Draws n sequences autoregressively. At most max_len actions are drawn per
// sequence. Randomness is consumed column by column in index order, so the
// result depends only on the model, n, max_len and the generator state.
std::vector<SampledSequence> sample_batch(const ModelParams& params, int n, int max_len, Rng& rng);

SampledSequence sample(const ModelParams& params, int max_len, std::uint64_t seed);

// Inverse-CDF draw from a log-probability column.
int draw_token(const Eigen::Ref<const Eigen::VectorXd>& logp, Rng& rng);

}  // namespace molrl::model

#endif  // MOLRL_MODEL_SAMPLER_H_
