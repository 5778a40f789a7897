//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_RL_TRACE_H_
#define MOLRL_RL_TRACE_H_

#include <Eigen/Dense>

#include <string>

#include "molrl/model/params.h"
#include "molrl/smiles/vocabulary.h"

namespace molrl::rl {

// Next-token distributions while teacher-forcing GO + seq + EOS: a V x (T+1)
// matrix, one column per step, the last column predicting EOS.
Eigen::MatrixXd probability_trace(const model::ModelParams& params, const smiles::TokenSequence& seq);

// One CSV row per step: step index, the token actually emitted, then the
// probability of every vocabulary token (header row holds the token texts).
std::string trace_csv(const Eigen::MatrixXd& trace, const smiles::Vocabulary& vocab, const smiles::TokenSequence& seq);

}  // namespace molrl::rl

#endif  // MOLRL_RL_TRACE_H_
