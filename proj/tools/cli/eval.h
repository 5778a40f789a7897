//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_TOOLS_CLI_EVAL_H_
#define MOLRL_TOOLS_CLI_EVAL_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molrl/scoring/scoring.h"

namespace molrl::cli {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct EvalReport {
  std::size_t num_samples = 0;
  std::size_t num_valid = 0;
  double fraction_valid = 0.0;
  double fraction_unique = 0.0;
  double fraction_sulphur_free = 0.0;  // valid and without S, over all samples
  double modal_token_frequency = 0.0;  // share of the commonest token among all tokens
  std::string modal_token;
  // Task predicate over all samples: sulphur-free, P(active) > 0.5, or
  // J(query) > 0.4 depending on the scorer.
  std::optional<double> fraction_task;
  std::optional<double> mean_score;
  std::map<std::string, MeanStd> descriptors;  // over valid molecules
  // ECFP6 J > 0.4 to any reference active, over all samples.
  std::optional<double> fraction_similar_train_active;
  std::optional<double> fraction_similar_test_active;
  // Share of reference actives generated verbatim (after whitespace strip).
  std::optional<double> fraction_recovered_train_active;
  std::optional<double> fraction_recovered_test_active;
  // Samples equal to some test active, divided by the sample count.
  std::optional<double> probability_test_active;
};

inline constexpr double kReferenceSimilarity = 0.4;

EvalReport evaluate_samples(const std::vector<std::string>& samples, const scoring::ScoringFunction* scorer,
                            const std::vector<std::string>* train_actives, const std::vector<std::string>* test_actives);

std::string eval_to_json(const EvalReport& report);
std::string eval_to_csv(const EvalReport& report);

// First column of a samples file: TSV with a "smiles" header row, or one
// SMILES per line. Blank lines are kept as empty samples.
std::vector<std::string> read_sample_column(const std::string& path);

// Active SMILES from a reference file (unlabeled lines, or label 1).
std::vector<std::string> read_actives(const std::string& path);

}  // namespace molrl::cli

#endif  // MOLRL_TOOLS_CLI_EVAL_H_
