//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SYNTH_GENERATOR_H_
#define MOLRL_SYNTH_GENERATOR_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "molrl/common/rng.h"

namespace molrl::synth {

// Procedural drug-like SMILES built from ring units, linkers and
// substituents. Every output parses. About a third of the molecules contain
// sulphur, and a small share carry the aryl-piperazine motif that defines
// the actives of the bundled activity task.
struct CorpusOptions {
  std::size_t size = 10000;
  std::uint64_t seed = 1;
  double motif_rate = 0.04;
  std::size_t max_tokens = 60;
};

struct MoleculeOptions {
  bool motif = false;         // include an aryl-piperazine
  double sulphur_scale = 0.55;  // multiplies the odds of sulphur-bearing parts
};

std::string random_molecule(Rng& rng, const MoleculeOptions& options);

// Unique molecules in generation order.
std::vector<std::string> generate_corpus(const CorpusOptions& options);

struct LabeledSmiles {
  std::string smiles;
  int label = 0;
};

// Actives carry the motif, inactives do not. Unique, shuffled.
std::vector<LabeledSmiles> generate_activity_dataset(std::size_t actives, std::size_t inactives, std::uint64_t seed,
                                                     std::size_t max_tokens = 60);

// True if an aromatic carbon is bonded directly to a piperazine nitrogen.
bool has_aryl_piperazine(std::string_view smiles);

}  // namespace molrl::synth

#endif  // MOLRL_SYNTH_GENERATOR_H_
