//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_ELEMENTS_H_
#define MOLRL_SMILES_ELEMENTS_H_

#include <span>
#include <string_view>

namespace molrl::smiles {

struct ElementInfo {
  std::string_view symbol;
  int atomic_number;
  double mass;  // standard atomic weight, g/mol
  int group;    // periodic group (1, 13..17)
  std::span<const int> valences;
};

// Supported elements; nullptr for anything else. Symbols are case-sensitive
// ("Cl", not "cl").
const ElementInfo* find_element(std::string_view symbol);

const ElementInfo& hydrogen();

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_ELEMENTS_H_
