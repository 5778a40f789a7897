//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/scoring/scoring.h"

#include <algorithm>

#include "molrl/common/error.h"
#include "molrl/qsar/model_io.h"
#include "molrl/smiles/descriptors.h"
#include "molrl/smiles/parser.h"

namespace molrl::scoring {

double similarity_score(double jaccard, double k) { return -1.0 + 2.0 * std::min(jaccard, k) / k; }

double activity_score(double p_active) { return -1.0 + 2.0 * p_active; }

fp::Fingerprint similarity_fingerprint(const smiles::MoleculeGraph& graph) {
  return fp::circular_fingerprint(graph, kSimilarityDiameter, fp::InvariantKind::kFeature);
}

fp::Fingerprint activity_fingerprint(const smiles::MoleculeGraph& graph) {
  return fp::circular_fingerprint(graph, kActivityDiameter, fp::InvariantKind::kElement);
}

Score NoSulphurScorer::score(std::string_view smiles) const {
  const auto parsed = smiles::parse_molecule(smiles);
  if (!parsed.ok()) return {0.0, false};
  return {smiles::contains_element(parsed.graph(), "S") ? -1.0 : 1.0, true};
}

SimilarityScorer::SimilarityScorer(std::string_view query_smiles, double k) : k_(k) {
  if (!(k > 0.0 && k <= 1.0)) throw ConfigError("similarity cap k must be in (0, 1]");
  const auto parsed = smiles::parse_molecule(query_smiles);
  if (!parsed.ok()) throw ConfigError("query_smiles does not parse: " + parsed.issue().message);
  query_ = similarity_fingerprint(parsed.graph());
}

double SimilarityScorer::similarity(std::string_view smiles) const {
  const auto parsed = smiles::parse_molecule(smiles);
  if (!parsed.ok()) return 0.0;
  return fp::jaccard(query_, similarity_fingerprint(parsed.graph()));
}

Score SimilarityScorer::score(std::string_view smiles) const {
  const auto parsed = smiles::parse_molecule(smiles);
  if (!parsed.ok()) return {-1.0, false};
  return {similarity_score(fp::jaccard(query_, similarity_fingerprint(parsed.graph())), k_), true};
}

ActivityScorer::ActivityScorer(qsar::SvmModel model) : model_(std::move(model)) {
  for (const auto& s : model_.support) {
    if (s.kind != fp::InvariantKind::kElement || s.diameter != kActivityDiameter) {
      throw ConfigError("activity model was not trained on diameter-6 element fingerprints");
    }
  }
}

double ActivityScorer::probability(std::string_view smiles) const {
  const auto parsed = smiles::parse_molecule(smiles);
  if (!parsed.ok()) return 0.0;
  return qsar::predict_probability(model_, activity_fingerprint(parsed.graph()));
}

Score ActivityScorer::score(std::string_view smiles) const {
  const auto parsed = smiles::parse_molecule(smiles);
  if (!parsed.ok()) return {-1.0, false};
  return {activity_score(qsar::predict_probability(model_, activity_fingerprint(parsed.graph()))), true};
}

std::unique_ptr<ScoringFunction> make_scorer(const RunConfig& config) {
  const std::string task = config.require_string("task");
  if (task == "no_sulphur") return std::make_unique<NoSulphurScorer>();
  if (task == "similarity") {
    return std::make_unique<SimilarityScorer>(config.require_string("query_smiles"), config.get_double("k", 1.0));
  }
  if (task == "activity") return std::make_unique<ActivityScorer>(qsar::load_svm(config.require_string("model_path")));
  throw ConfigError("unknown task '" + task + "' (expected no_sulphur, similarity or activity)");
}

}  // namespace molrl::scoring
