//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_FINGERPRINT_FINGERPRINT_H_
#define MOLRL_FINGERPRINT_FINGERPRINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "molrl/smiles/molecule.h"

namespace molrl::fp {

enum class InvariantKind {
  kElement,  // ECFP-like: element, charge, heavy degree, H count, aromaticity
  kFeature,  // FCFP-like: pharmacophoric flags only
};

const char* to_string(InvariantKind kind);
InvariantKind invariant_kind_from_string(std::string_view name);

// Sparse circular fingerprint: a sorted, duplicate-free list of 32-bit
// feature ids.
struct Fingerprint {
  std::vector<std::uint32_t> features;
  int diameter = 0;
  InvariantKind kind = InvariantKind::kElement;

  std::size_t size() const { return features.size(); }
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// Pharmacophoric atom flags used by the feature invariants.
enum FeatureFlag : std::uint8_t {
  kDonor = 1 << 0,     // N or O carrying hydrogen; neutral SH
  kAcceptor = 1 << 1,  // O; pyridine-type aromatic N; nitrile N; divalent or anionic S;
                       // aromatic S without an aromatic N within two bonds
  kAromatic = 1 << 2,
  kHalogen = 1 << 3,   // F, Cl, Br, I
  kBasic = 1 << 4,     // aliphatic amine N not bonded to carbonyl C or aromatic atom; cationic N
  kAcidic = 1 << 5,    // OH/O- on a carbon, sulfur or phosphorus that carries =O
};

std::uint8_t feature_flags(const smiles::MoleculeGraph& graph, int atom);

// 32-bit FNV-1a.
std::uint32_t fnv1a(std::span<const std::uint8_t> bytes);

// Iterative neighborhood hashing. Round 0 hashes the per-atom invariant;
// each of diameter/2 further rounds hashes the atom's previous identifier
// with its sorted (bond order, neighbor identifier) pairs. A round's
// identifier is kept only when the atom's bond environment grew and no
// identical bond environment was already recorded. Throws DataError for odd
// or out-of-range diameters.
Fingerprint circular_fingerprint(const smiles::MoleculeGraph& graph, int diameter,
                                 InvariantKind kind);

// |A ∩ B| / |A ∪ B|, 1.0 when both are empty. Throws DataError when the
// fingerprints differ in diameter or invariant kind.
double jaccard(const Fingerprint& a, const Fingerprint& b);

std::size_t intersection_size(const Fingerprint& a, const Fingerprint& b);

// Dump format: "<index> <diameter> <kind> <hex id> <hex id> ...".
std::string format_fingerprint_line(std::size_t index, const Fingerprint& fp);
Fingerprint parse_fingerprint_line(std::string_view line, std::size_t* index = nullptr);

}  // namespace molrl::fp

#endif  // MOLRL_FINGERPRINT_FINGERPRINT_H_
