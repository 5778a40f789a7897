//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/fingerprint/fingerprint.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "molrl/common/error.h"

namespace molrl::fp {

using smiles::BondOrder;
using smiles::MoleculeGraph;

const char* to_string(InvariantKind kind) {
  return kind == InvariantKind::kElement ? "ecfp" : "fcfp";
}

InvariantKind invariant_kind_from_string(std::string_view name) {
  if (name == "ecfp" || name == "element") return InvariantKind::kElement;
  if (name == "fcfp" || name == "feature") return InvariantKind::kFeature;
  throw DataError("unknown fingerprint kind '" + std::string(name) + "'");
}

std::uint32_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint32_t h = 2166136261u;
  for (const auto b : bytes) {
    h ^= b;
    h *= 16777619u;
  }
  return h;
}

namespace {

class ByteWriter {
 public:
  void u32(std::uint32_t v) {
    for (int s = 0; s < 32; s += 8) bytes_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  std::uint32_t hash() const { return fnv1a(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

std::uint32_t bond_code(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return 1;
    case BondOrder::kDouble: return 2;
    case BondOrder::kTriple: return 3;
    case BondOrder::kQuadruple: return 4;
    case BondOrder::kAromatic: return 5;
  }
  return 0;
}

bool carries_oxo(const MoleculeGraph& g, int atom) {
  for (const auto& nb : g.neighbors(atom)) {
    if (g.bonds()[static_cast<std::size_t>(nb.bond)].order == BondOrder::kDouble &&
        (g.atoms()[static_cast<std::size_t>(nb.atom)].atomic_number == 8 ||
         g.atoms()[static_cast<std::size_t>(nb.atom)].atomic_number == 16)) {
      return true;
    }
  }
  return false;
}

std::uint32_t atom_invariant(const MoleculeGraph& g, int i, InvariantKind kind) {
  const auto& a = g.atoms()[static_cast<std::size_t>(i)];
  ByteWriter w;
  w.u32(0);
  if (kind == InvariantKind::kElement) {
    w.u32(1);
    w.i32(a.atomic_number);
    w.i32(a.charge);
    w.i32(g.heavy_degree(i));
    w.i32(a.total_h());
    w.u32(a.aromatic ? 1 : 0);
  } else {
    w.u32(2);
    w.u32(feature_flags(g, i));
  }
  return w.hash();
}

// True when an aromatic N sits one or two bonds away; such an aromatic S is
// not an acceptor.
bool near_aromatic_n(const MoleculeGraph& g, int i) {
  const auto is_n = [&](int k) {
    const auto& at = g.atoms()[static_cast<std::size_t>(k)];
    return at.atomic_number == 7 && at.aromatic;
  };
  for (const auto& nb : g.neighbors(i)) {
    if (is_n(nb.atom)) return true;
    for (const auto& nb2 : g.neighbors(nb.atom)) {
      if (nb2.atom != i && is_n(nb2.atom)) return true;
    }
  }
  return false;
}

using BondSet = std::vector<std::uint64_t>;

void set_bit(BondSet& s, int b) { s[static_cast<std::size_t>(b) / 64] |= 1ull << (b % 64); }

void merge_into(BondSet& dst, const BondSet& src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] |= src[k];
}

}  // namespace

std::uint8_t feature_flags(const MoleculeGraph& g, int i) {
  const auto& a = g.atoms()[static_cast<std::size_t>(i)];
  std::uint8_t flags = 0;
  const int z = a.atomic_number;
  if (a.aromatic) flags |= kAromatic;
  if (z == 9 || z == 17 || z == 35 || z == 53) flags |= kHalogen;
  if ((z == 7 || z == 8) && a.total_h() > 0) flags |= kDonor;
  if (z == 16 && a.charge == 0 && a.total_h() > 0) flags |= kDonor;

  bool triple = false;
  bool next_to_carbonyl = false;
  bool next_to_aromatic = false;
  bool all_single = true;
  for (const auto& nb : g.neighbors(i)) {
    const auto order = g.bonds()[static_cast<std::size_t>(nb.bond)].order;
    const auto& other = g.atoms()[static_cast<std::size_t>(nb.atom)];
    if (order == BondOrder::kTriple) triple = true;
    if (order != BondOrder::kSingle) all_single = false;
    if (other.aromatic) next_to_aromatic = true;
    if (other.atomic_number == 6 && carries_oxo(g, nb.atom)) next_to_carbonyl = true;
  }

  if (z == 8 && a.charge <= 0) flags |= kAcceptor;
  if (z == 16) {
    const auto degree = g.neighbors(i).size();
    if (a.charge < 0 || (a.charge == 0 && !a.aromatic && all_single && degree + a.total_h() == 2)) {
      flags |= kAcceptor;
    }
    if (a.aromatic && a.charge == 0 && !near_aromatic_n(g, i)) flags |= kAcceptor;
  }
  if (z == 7) {
    if (a.aromatic && a.total_h() == 0 && g.neighbors(i).size() == 2) flags |= kAcceptor;
    if (!a.aromatic && triple) flags |= kAcceptor;
    if (a.charge > 0 || (!a.aromatic && all_single && !next_to_carbonyl && !next_to_aromatic &&
                         a.charge == 0)) {
      flags |= kBasic;
    }
  }
  if (z == 8 && (a.total_h() > 0 || a.charge < 0) && g.neighbors(i).size() == 1) {
    const int host = g.neighbors(i).front().atom;
    const int hz = g.atoms()[static_cast<std::size_t>(host)].atomic_number;
    if ((hz == 6 || hz == 15 || hz == 16) && carries_oxo(g, host)) flags |= kAcidic;
  }
  return flags;
}

Fingerprint circular_fingerprint(const MoleculeGraph& g, int diameter, InvariantKind kind) {
  if (diameter < 0 || diameter > 6 || diameter % 2 != 0) {
    throw DataError("fingerprint diameter must be one of 0, 2, 4, 6; got " + std::to_string(diameter));
  }
  const auto n = static_cast<std::size_t>(g.num_atoms());
  const std::size_t words = (static_cast<std::size_t>(g.num_bonds()) + 63) / 64;

  std::set<std::uint32_t> features;
  std::vector<std::uint32_t> ids(n);
  std::vector<BondSet> env(n, BondSet(words, 0));
  std::vector<bool> done(n, false);
  std::set<BondSet> seen_envs;

  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = atom_invariant(g, static_cast<int>(i), kind);
    features.insert(ids[i]);
  }

  for (int round = 1; round <= diameter / 2; ++round) {
    std::vector<std::uint32_t> next_ids(n);
    std::vector<BondSet> next_env(n);
    std::vector<std::tuple<std::uint32_t, std::size_t>> candidates;  // (id, atom)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> nbrs;
      next_env[i] = env[i];
      for (const auto& nb : g.neighbors(static_cast<int>(i))) {
        nbrs.emplace_back(bond_code(g.bonds()[static_cast<std::size_t>(nb.bond)].order),
                          ids[static_cast<std::size_t>(nb.atom)]);
        set_bit(next_env[i], nb.bond);
        merge_into(next_env[i], env[static_cast<std::size_t>(nb.atom)]);
      }
      std::sort(nbrs.begin(), nbrs.end());
      ByteWriter w;
      w.u32(static_cast<std::uint32_t>(round));
      w.u32(ids[i]);
      w.u32(static_cast<std::uint32_t>(nbrs.size()));
      for (const auto& [code, id] : nbrs) {
        w.u32(code);
        w.u32(id);
      }
      next_ids[i] = w.hash();
      if (!done[i]) {
        if (next_env[i] == env[i]) {
          done[i] = true;
        } else {
          candidates.emplace_back(next_ids[i], i);
        }
      }
    }
    // Identical environments reached from different centers are recorded
    // once, under the smallest identifier.
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [id, atom] : candidates) {
      if (seen_envs.insert(next_env[atom]).second) features.insert(id);
    }
    ids = std::move(next_ids);
    env = std::move(next_env);
  }
  return Fingerprint{std::vector<std::uint32_t>(features.begin(), features.end()), diameter, kind};
}

std::size_t intersection_size(const Fingerprint& a, const Fingerprint& b) {
  std::size_t common = 0;
  auto ia = a.features.begin();
  auto ib = b.features.begin();
  while (ia != a.features.end() && ib != b.features.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return common;
}

double jaccard(const Fingerprint& a, const Fingerprint& b) {
  if (a.diameter != b.diameter || a.kind != b.kind) {
    throw DataError("jaccard: fingerprints differ in diameter or invariant kind");
  }
  const std::size_t common = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

std::string format_fingerprint_line(std::size_t index, const Fingerprint& fp) {
  std::ostringstream out;
  out << index << ' ' << fp.diameter << ' ' << to_string(fp.kind);
  char buf[9];
  for (const auto f : fp.features) {
    std::snprintf(buf, sizeof(buf), "%08x", f);
    out << ' ' << buf;
  }
  return out.str();
}

Fingerprint parse_fingerprint_line(std::string_view line, std::size_t* index) {
  std::istringstream in{std::string(line)};
  std::size_t idx = 0;
  int diameter = 0;
  std::string kind;
  if (!(in >> idx >> diameter >> kind)) throw DataError("malformed fingerprint line");
  Fingerprint fp;
  fp.diameter = diameter;
  fp.kind = invariant_kind_from_string(kind);
  std::string hex;
  while (in >> hex) fp.features.push_back(static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16)));
  std::sort(fp.features.begin(), fp.features.end());
  fp.features.erase(std::unique(fp.features.begin(), fp.features.end()), fp.features.end());
  if (index != nullptr) *index = idx;
  return fp;
}

}  // namespace molrl::fp
