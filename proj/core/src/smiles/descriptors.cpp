//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/descriptors.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "molrl/smiles/elements.h"
#include "molrl/smiles/rings.h"

namespace molrl::smiles {
namespace {

// Crippen-style contributions for a reduced atom typing (version
// kLogPTableVersion). Magnitudes are in line with the Wildman-Crippen
// tables; hydrogens are added per attached heavy atom.
namespace logp {
constexpr double kCarbonPrimarySecondary = 0.1441;
constexpr double kCarbonTertiaryQuaternary = 0.0;
constexpr double kCarbonNextToHetero = -0.2035;
constexpr double kCarbonDoubleToHetero = -0.2783;
constexpr double kCarbonUnsaturated = 0.1551;
constexpr double kAromaticCarbon = 0.1581;
constexpr double kAromaticCarbonHetero = 0.1360;
constexpr double kHydrogenOnCarbon = 0.1230;
constexpr double kHydrogenOnNitrogen = 0.2142;
constexpr double kHydrogenOnOxygen = -0.2677;
constexpr double kAminePrimary = -1.0190;
constexpr double kAmineSecondary = -0.7096;
constexpr double kAmineTertiary = -0.3187;
constexpr double kAromaticNitrogen = -0.4806;
constexpr double kNitrogenUnsaturated = -0.3239;
constexpr double kOxygenHydroxyl = -0.2893;
constexpr double kOxygenEther = -0.0684;
constexpr double kOxygenCarbonyl = -0.1526;
constexpr double kAromaticOxygen = 0.1552;
constexpr double kSulfur = 0.6482;
constexpr double kAromaticSulfur = 0.6237;
constexpr double kSulfurOxidized = -0.0024;
constexpr double kFluorine = 0.4202;
constexpr double kChlorine = 0.6895;
constexpr double kBromine = 0.8456;
constexpr double kIodine = 0.8857;
constexpr double kPhosphorus = 0.8612;
constexpr double kOther = 0.0;
}  // namespace logp

bool is_hetero(const Atom& a) { return a.atomic_number != 6 && a.atomic_number != 1; }

double atom_contribution(const MoleculeGraph& g, int i) {
  const Atom& a = g.atoms()[static_cast<std::size_t>(i)];
  bool hetero_neighbor = false;
  bool double_to_hetero = false;
  bool multiple_bond = false;
  bool double_to_oxygen = false;
  for (const auto& nb : g.neighbors(i)) {
    const Atom& other = g.atoms()[static_cast<std::size_t>(nb.atom)];
    const auto order = g.bonds()[static_cast<std::size_t>(nb.bond)].order;
    if (is_hetero(other)) hetero_neighbor = true;
    if (order == BondOrder::kDouble || order == BondOrder::kTriple) {
      multiple_bond = true;
      if (is_hetero(other)) double_to_hetero = true;
      if (other.atomic_number == 8) double_to_oxygen = true;
    }
  }
  const int h = a.total_h();
  switch (a.atomic_number) {
    case 6: {
      double c;
      if (a.aromatic) {
        c = hetero_neighbor ? logp::kAromaticCarbonHetero : logp::kAromaticCarbon;
      } else if (double_to_hetero) {
        c = logp::kCarbonDoubleToHetero;
      } else if (multiple_bond) {
        c = logp::kCarbonUnsaturated;
      } else if (hetero_neighbor) {
        c = logp::kCarbonNextToHetero;
      } else {
        c = h >= 2 ? logp::kCarbonPrimarySecondary : logp::kCarbonTertiaryQuaternary;
      }
      return c + h * logp::kHydrogenOnCarbon;
    }
    case 7: {
      double c;
      if (a.aromatic) {
        c = logp::kAromaticNitrogen;
      } else if (multiple_bond) {
        c = logp::kNitrogenUnsaturated;
      } else {
        const int heavy = g.heavy_degree(i);
        c = heavy <= 1 ? logp::kAminePrimary : heavy == 2 ? logp::kAmineSecondary : logp::kAmineTertiary;
      }
      return c + h * logp::kHydrogenOnNitrogen;
    }
    case 8: {
      double c;
      if (a.aromatic) {
        c = logp::kAromaticOxygen;
      } else if (multiple_bond) {
        c = logp::kOxygenCarbonyl;
      } else {
        c = h > 0 ? logp::kOxygenHydroxyl : logp::kOxygenEther;
      }
      return c + h * logp::kHydrogenOnOxygen;
    }
    case 16:
      if (a.aromatic) return logp::kAromaticSulfur;
      return (double_to_oxygen ? logp::kSulfurOxidized : logp::kSulfur) + h * logp::kHydrogenOnCarbon;
    case 9: return logp::kFluorine;
    case 17: return logp::kChlorine;
    case 35: return logp::kBromine;
    case 53: return logp::kIodine;
    case 15: return logp::kPhosphorus;
    default: return logp::kOther;
  }
}

}  // namespace

bool contains_element(const MoleculeGraph& graph, std::string_view element) {
  std::string wanted(element);
  if (!wanted.empty()) wanted[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(wanted[0])));
  return std::any_of(graph.atoms().begin(), graph.atoms().end(),
                     [&](const Atom& a) { return a.element == wanted; });
}

double molecular_weight(const MoleculeGraph& graph) {
  double mw = 0.0;
  for (const auto& a : graph.atoms()) {
    mw += find_element(a.element)->mass + a.total_h() * hydrogen().mass;
  }
  return mw;
}

int rotatable_bonds(const MoleculeGraph& graph) {
  const auto in_ring = ring_bond_flags(graph);
  int count = 0;
  for (int b = 0; b < graph.num_bonds(); ++b) {
    const auto& bond = graph.bonds()[static_cast<std::size_t>(b)];
    if (bond.order != BondOrder::kSingle || in_ring[static_cast<std::size_t>(b)]) continue;
    if (!graph.is_heavy(bond.begin) || !graph.is_heavy(bond.end)) continue;
    if (graph.heavy_degree(bond.begin) < 2 || graph.heavy_degree(bond.end) < 2) continue;
    ++count;
  }
  return count;
}

int aromatic_rings(const MoleculeGraph& graph) {
  int count = 0;
  for (const auto& ring : smallest_rings(graph)) {
    const bool all_aromatic = std::all_of(ring.begin(), ring.end(), [&](int i) {
      return graph.atoms()[static_cast<std::size_t>(i)].aromatic;
    });
    count += all_aromatic ? 1 : 0;
  }
  return count;
}

double crippen_logp(const MoleculeGraph& graph) {
  double total = 0.0;
  for (int i = 0; i < graph.num_atoms(); ++i) total += atom_contribution(graph, i);
  return total;
}

DescriptorSet descriptors(const MoleculeGraph& graph) {
  return DescriptorSet{molecular_weight(graph), rotatable_bonds(graph), aromatic_rings(graph),
                       crippen_logp(graph)};
}

}  // namespace molrl::smiles
