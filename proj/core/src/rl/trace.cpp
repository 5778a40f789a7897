//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/rl/trace.h"

#include <cstdio>

#include "molrl/common/error.h"
#include "molrl/model/network.h"

namespace molrl::rl {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Eigen::MatrixXd probability_trace(const model::ModelParams& params, const smiles::TokenSequence& seq) {
  const model::Likelihood lk = model::forward_likelihood(params, seq);
  Eigen::MatrixXd m(params.shape.vocab_size, static_cast<Eigen::Index>(lk.step_probs.size()));
  for (std::size_t t = 0; t < lk.step_probs.size(); ++t) m.col(static_cast<Eigen::Index>(t)) = lk.step_probs[t];
  return m;
}

std::string trace_csv(const Eigen::MatrixXd& trace, const smiles::Vocabulary& vocab, const smiles::TokenSequence& seq) {
  if (trace.rows() != vocab.size() || trace.cols() != static_cast<Eigen::Index>(seq.length() + 1)) {
    throw DataError("trace dimensions do not match vocabulary and sequence");
  }
  std::string out = "step,emitted";
  for (const auto& tok : vocab.tokens()) out += "," + csv_field(tok);
  out += "\n";
  char buf[32];
  for (Eigen::Index t = 0; t < trace.cols(); ++t) {
    const int emitted = static_cast<std::size_t>(t) < seq.length() ? seq.ids[static_cast<std::size_t>(t)] : vocab.eos_id();
    out += std::to_string(t) + "," + csv_field(vocab.text(emitted));
    for (Eigen::Index v = 0; v < trace.rows(); ++v) {
      std::snprintf(buf, sizeof buf, ",%.17g", trace(v, t));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace molrl::rl
