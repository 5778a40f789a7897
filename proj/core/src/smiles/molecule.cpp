//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/molecule.h"

#include <numeric>

namespace molrl::smiles {

int valence_units(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return 1;
    case BondOrder::kDouble: return 2;
    case BondOrder::kTriple: return 3;
    case BondOrder::kQuadruple: return 4;
    case BondOrder::kAromatic: return 1;
  }
  return 1;
}

MoleculeGraph::MoleculeGraph(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)), adjacency_(atoms_.size()) {
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    const auto& bond = bonds_[b];
    adjacency_[static_cast<std::size_t>(bond.begin)].push_back({bond.end, static_cast<int>(b)});
    adjacency_[static_cast<std::size_t>(bond.end)].push_back({bond.begin, static_cast<int>(b)});
  }
}

int MoleculeGraph::heavy_degree(int atom) const {
  int d = 0;
  for (const auto& n : neighbors(atom)) d += is_heavy(n.atom) ? 1 : 0;
  return d;
}

int MoleculeGraph::bond_valence(int atom) const {
  int v = 0;
  for (const auto& n : neighbors(atom)) {
    v += valence_units(bonds_[static_cast<std::size_t>(n.bond)].order);
  }
  return v;
}

int MoleculeGraph::num_components() const {
  std::vector<int> parent(atoms_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = num_atoms();
  for (const auto& b : bonds_) {
    const int ra = find(b.begin);
    const int rb = find(b.end);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      --components;
    }
  }
  return components;
}

MoleculeGraph MoleculeGraph::permuted(const std::vector<int>& perm) const {
  std::vector<int> new_index(atoms_.size());
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    new_index[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    atoms.push_back(atoms_[static_cast<std::size_t>(perm[i])]);
  }
  std::vector<Bond> bonds = bonds_;
  for (auto& b : bonds) {
    b.begin = new_index[static_cast<std::size_t>(b.begin)];
    b.end = new_index[static_cast<std::size_t>(b.end)];
  }
  return MoleculeGraph(std::move(atoms), std::move(bonds));
}

}  // namespace molrl::smiles
