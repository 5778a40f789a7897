//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SCORING_SCORING_H_
#define MOLRL_SCORING_SCORING_H_

#include <memory>
#include <string>
#include <string_view>

#include "molrl/common/config.h"
#include "molrl/fingerprint/fingerprint.h"
#include "molrl/qsar/svm.h"

namespace molrl::scoring {

struct Score {
  double value = 0.0;  // in [-1, 1]
  bool valid = false;  // the string parsed as a molecule
};

// Maps a generated string to a score. Implementations are immutable after
// construction and safe to call concurrently.
class ScoringFunction {
 public:
  virtual ~ScoringFunction() = default;
  virtual Score score(std::string_view smiles) const = 0;
  virtual std::string name() const = 0;
};

// +1 valid without sulphur, -1 valid with sulphur, 0 unparseable.
class NoSulphurScorer final : public ScoringFunction {
 public:
  Score score(std::string_view smiles) const override;
  std::string name() const override { return "no_sulphur"; }
};

// -1 + 2 min(J, k) / k on diameter-4 feature fingerprints; unparseable
// strings score -1.
class SimilarityScorer final : public ScoringFunction {
 public:
  // Throws ConfigError if k is outside (0, 1] or the query does not parse.
  SimilarityScorer(std::string_view query_smiles, double k);

  Score score(std::string_view smiles) const override;
  std::string name() const override { return "similarity"; }

  double similarity(std::string_view smiles) const;  // J, 0 when unparseable
  const fp::Fingerprint& query() const { return query_; }
  double k() const { return k_; }

 private:
  fp::Fingerprint query_;
  double k_;
};

// -1 + 2 P(active) on diameter-6 element fingerprints; unparseable strings
// score -1.
class ActivityScorer final : public ScoringFunction {
 public:
  explicit ActivityScorer(qsar::SvmModel model);

  Score score(std::string_view smiles) const override;
  std::string name() const override { return "activity"; }

  double probability(std::string_view smiles) const;  // 0 when unparseable

 private:
  qsar::SvmModel model_;
};

// Closed-form maps shared by the scorers.
double similarity_score(double jaccard, double k);
double activity_score(double p_active);

inline constexpr int kSimilarityDiameter = 4;
inline constexpr int kActivityDiameter = 6;

fp::Fingerprint similarity_fingerprint(const smiles::MoleculeGraph& graph);
fp::Fingerprint activity_fingerprint(const smiles::MoleculeGraph& graph);

// Builds the scorer named by the "task" key (no_sulphur | similarity |
// activity) with its keys query_smiles, k, model_path.
std::unique_ptr<ScoringFunction> make_scorer(const RunConfig& config);

}  // namespace molrl::scoring

#endif  // MOLRL_SCORING_SCORING_H_
