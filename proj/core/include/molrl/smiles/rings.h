//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_RINGS_H_
#define MOLRL_SMILES_RINGS_H_

#include <vector>

#include "molrl/smiles/molecule.h"

namespace molrl::smiles {

// True for every bond that lies on at least one cycle (i.e. is not a bridge).
std::vector<bool> ring_bond_flags(const MoleculeGraph& graph);

// Smallest set of smallest rings. Each ring is a list of atom indices in
// traversal order; the number of rings equals the cycle rank
// (bonds - atoms + components).
std::vector<std::vector<int>> smallest_rings(const MoleculeGraph& graph);

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_RINGS_H_
