//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_DESCRIPTORS_H_
#define MOLRL_SMILES_DESCRIPTORS_H_

#include <string_view>

#include "molrl/smiles/molecule.h"

namespace molrl::smiles {

struct DescriptorSet {
  double molecular_weight = 0.0;  // g/mol, implicit hydrogens included
  int num_rotatable_bonds = 0;
  int num_aromatic_rings = 0;
  double clogp = 0.0;
};

// Identifies the bundled atom-contribution logP table.
inline constexpr std::string_view kLogPTableVersion = "molrl-crippen-lite-1";

// True if any atom has the given element; aromatic "s" counts as "S".
bool contains_element(const MoleculeGraph& graph, std::string_view element);

double molecular_weight(const MoleculeGraph& graph);

// Non-ring single bonds joining two heavy atoms that each have another heavy
// neighbor.
int rotatable_bonds(const MoleculeGraph& graph);

// Rings of the smallest set of smallest rings whose atoms are all aromatic.
int aromatic_rings(const MoleculeGraph& graph);

// Atom-contribution logP estimate (Crippen-style, reduced atom typing).
double crippen_logp(const MoleculeGraph& graph);

DescriptorSet descriptors(const MoleculeGraph& graph);

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_DESCRIPTORS_H_
