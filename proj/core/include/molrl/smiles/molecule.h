//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_SMILES_MOLECULE_H_
#define MOLRL_SMILES_MOLECULE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace molrl::smiles {

enum class BondOrder : std::uint8_t { kSingle, kDouble, kTriple, kQuadruple, kAromatic };

// Contribution of a bond to its atoms' valence. Aromatic bonds count as one;
// the extra aromatic-system unit is handled per atom.
int valence_units(BondOrder order);

struct Atom {
  std::string element;  // capitalized symbol, e.g. "C", "Cl"
  int atomic_number = 0;
  bool aromatic = false;
  int charge = 0;
  int explicit_h = 0;  // from bracket atoms
  int implicit_h = 0;  // derived for organic-subset atoms
  bool bracket = false;

  int total_h() const { return explicit_h + implicit_h; }
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

// Atoms and bonds of a parsed SMILES with adjacency lists. Ring closures are
// already resolved into ordinary bonds.
class MoleculeGraph {
 public:
  MoleculeGraph() = default;
  MoleculeGraph(std::vector<Atom> atoms, std::vector<Bond> bonds);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  std::vector<Atom>& mutable_atoms() { return atoms_; }

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }

  const std::vector<Neighbor>& neighbors(int atom) const {
    return adjacency_[static_cast<std::size_t>(atom)];
  }

  // Neighbors that are not hydrogen atoms.
  int heavy_degree(int atom) const;
  bool is_heavy(int atom) const { return atoms_[static_cast<std::size_t>(atom)].atomic_number != 1; }

  // Sum of bond valence units at an atom.
  int bond_valence(int atom) const;

  // Connected components by atom index.
  int num_components() const;

  // Reorders atoms (new index i takes old atom perm[i]); bonds are remapped.
  MoleculeGraph permuted(const std::vector<int>& perm) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

}  // namespace molrl::smiles

#endif  // MOLRL_SMILES_MOLECULE_H_
