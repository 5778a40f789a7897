//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/synth/generator.h"

#include <algorithm>
#include <unordered_set>

#include "molrl/common/error.h"
#include "molrl/smiles/parser.h"
#include "molrl/smiles/rings.h"
#include "molrl/smiles/tokenizer.h"

namespace molrl::synth {
namespace {

struct RingDef {
  std::vector<std::string> atoms;  // ring atoms in order, closed 0 .. n-1
  bool aromatic;
  bool sulphur;
  double weight;
};

// Positions that may carry a substituent or a chain continuation.
bool attachable(const std::string& atom) { return atom == "c" || atom == "C" || atom == "N"; }

const std::vector<RingDef>& ring_table() {
  static const std::vector<RingDef> t = {
      {{"c", "c", "c", "c", "c", "c"}, true, false, 6.0},  // benzene
      {{"c", "c", "c", "n", "c", "c"}, true, false, 1.5},  // pyridine
      {{"c", "n", "c", "n", "c", "c"}, true, false, 0.6},  // pyrimidine
      {{"c", "c", "c", "o", "c"}, true, false, 0.6},       // furan
      {{"c", "c", "c", "s", "c"}, true, true, 1.2},        // thiophene
      {{"c", "s", "c", "n", "c"}, true, true, 0.6},        // thiazole
      {{"C", "C", "C", "C", "C", "C"}, false, false, 1.2}, // cyclohexane
      {{"C", "C", "C", "C", "C"}, false, false, 0.5},      // cyclopentane
      {{"C", "C", "N", "C", "C", "C"}, false, false, 1.0}, // piperidine
      {{"C", "C", "O", "C", "C", "N"}, false, false, 0.8}, // morpholine
      {{"C", "C", "S", "C", "C"}, false, true, 0.3},       // thiolane
  };
  return t;
}

struct Choice {
  const char* text;
  bool sulphur;
  double weight;
};

const std::vector<Choice>& substituents() {
  static const std::vector<Choice> t = {
      {"F", false, 2.0},       {"Cl", false, 1.5},       {"Br", false, 0.6},      {"C", false, 3.0},
      {"OC", false, 1.5},      {"C(F)(F)F", false, 0.8}, {"C#N", false, 0.6},     {"O", false, 0.8},
      {"N", false, 0.6},       {"C(=O)O", false, 0.5},   {"C(=O)N", false, 0.5},  {"[N+](=O)[O-]", false, 0.3},
      {"CC", false, 0.6},      {"SC", true, 0.5},        {"S(C)(=O)=O", true, 0.4}, {"S(N)(=O)=O", true, 0.3},
  };
  return t;
}

const std::vector<Choice>& linkers() {
  static const std::vector<Choice> t = {
      {"", false, 2.0},        {"C", false, 2.0},         {"CC", false, 1.0},       {"O", false, 1.0},
      {"N", false, 0.8},       {"C(=O)N", false, 1.5},    {"NC(=O)", false, 1.5},   {"C(=O)", false, 0.8},
      {"OC", false, 0.8},      {"CO", false, 0.5},        {"NC(=O)N", false, 0.4},  {"S", true, 0.6},
      {"S(=O)(=O)N", true, 0.6}, {"NS(=O)(=O)", true, 0.4}, {"CS", true, 0.3},
  };
  return t;
}

const std::vector<Choice>& caps() {
  static const std::vector<Choice> t = {
      {"C", false, 2.0},   {"CC", false, 1.0},    {"CCC", false, 0.5}, {"CC(C)", false, 0.5},
      {"OC", false, 0.6},  {"N", false, 0.4},     {"CCO", false, 0.3}, {"CS", true, 0.4},
      {"CCN", false, 0.3}, {"CC(=O)N", false, 0.4},
  };
  return t;
}

const std::vector<Choice>& fused_ends() {
  static const std::vector<Choice> t = {
      {"c1ccc2ccccc2c1", false, 1.0},
      {"c1ccc2[nH]ccc2c1", false, 0.6},
      {"c1ccc2occc2c1", false, 0.4},
      {"c1ccc2sccc2c1", true, 0.4},
  };
  return t;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items, double sulphur_scale) {
  double total = 0.0;
  for (const auto& it : items) total += it.weight * (it.sulphur ? sulphur_scale : 1.0);
  double u = rng.uniform() * total;
  for (const auto& it : items) {
    u -= it.weight * (it.sulphur ? sulphur_scale : 1.0);
    if (u < 0.0) return it;
  }
  return items.back();
}

// Writes one ring entered at atom 0 (if `entered`), optionally continuing
// from another attachable atom; the continuation point is the end of the
// returned text. Returns false in `has_exit` when no exit was placed.
std::string write_ring(Rng& rng, const RingDef& ring, bool want_exit, double sulphur_scale, double sub_rate,
                       bool& has_exit) {
  const int n = static_cast<int>(ring.atoms.size());
  std::vector<int> exits;
  for (int k = 1; k < n; ++k) {
    if (attachable(ring.atoms[static_cast<std::size_t>(k)])) exits.push_back(k);
  }
  int exit = -1;
  if (want_exit && !exits.empty()) {
    // Prefer positions across the ring.
    std::vector<int> far;
    for (const int k : exits) {
      if (std::abs(k - n / 2) <= 1) far.push_back(k);
    }
    const auto& from = far.empty() ? exits : far;
    exit = from[rng.below(from.size())];
  }
  has_exit = exit >= 0;

  std::string out;
  for (int k = 0; k < n; ++k) {
    const auto& a = ring.atoms[static_cast<std::size_t>(k)];
    out += a;
    if (k == 0 || k == n - 1) out += "1";  // ring-closure digits directly follow their atoms
    // Substituents only away from the entry, the exit and ring nitrogens.
    if (k > 0 && k != exit && (a == "c" || a == "C") && rng.bernoulli(sub_rate)) {
      out += "(" + std::string(pick(rng, substituents(), sulphur_scale).text) + ")";
    }
    if (k == exit && k < n - 1) out += "(";
  }
  if (exit >= 0 && exit < n - 1) out += ")";
  return out;
}

}  // namespace

std::string random_molecule(Rng& rng, const MoleculeOptions& options) {
  const double ss = options.sulphur_scale;
  const int num_rings = 1 + static_cast<int>(rng.below(3));
  const int motif_at = options.motif ? static_cast<int>(rng.below(static_cast<std::uint64_t>(num_rings))) : -1;

  std::string s;
  if (rng.bernoulli(0.45)) s += pick(rng, caps(), ss).text;
  for (int r = 0; r < num_rings; ++r) {
    const bool last = r == num_rings - 1;
    if (last && motif_at != r && rng.bernoulli(0.15)) {
      if (!s.empty()) s += pick(rng, linkers(), ss).text;
      s += pick(rng, fused_ends(), ss).text;
      return s;
    }
    const RingDef* ring = nullptr;
    if (r == motif_at) {
      // The aryl ring bonded straight to piperazine N.
      ring = &ring_table()[rng.bernoulli(0.75) ? 0 : 1];
    } else {
      do {
        ring = &pick(rng, ring_table(), ss);
      } while (r == 0 && s.empty() && !ring->aromatic && rng.bernoulli(0.3));
    }
    if (!s.empty()) s += pick(rng, linkers(), ss).text;
    const bool want_exit = !last || r == motif_at || rng.bernoulli(0.35);
    bool has_exit = false;
    s += write_ring(rng, *ring, want_exit, ss, 0.25, has_exit);
    if (r == motif_at && has_exit) {
      s += "N1CCN(CC1)";
      if (last) {
        s += pick(rng, caps(), ss).text;
        return s;
      }
      continue;
    }
    if (last && has_exit) s += pick(rng, substituents(), ss).text;
    if (!has_exit && !last) return s;  // ring without a free position ends the chain
  }
  return s;
}

std::vector<std::string> generate_corpus(const CorpusOptions& options) {
  Rng rng(options.seed);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::size_t attempts = 0;
  while (out.size() < options.size) {
    if (++attempts > options.size * 50 + 1000) throw DataError("corpus generator could not reach the requested size");
    MoleculeOptions mo;
    mo.motif = rng.bernoulli(options.motif_rate);
    std::string s = random_molecule(rng, mo);
    if (!mo.motif && has_aryl_piperazine(s)) continue;
    if (smiles::tokenize(s).size() > options.max_tokens) continue;
    if (!smiles::is_valid_smiles(s)) throw DataError("corpus generator produced an invalid molecule: " + s);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSmiles> generate_activity_dataset(std::size_t actives, std::size_t inactives, std::uint64_t seed,
                                                     std::size_t max_tokens) {
  Rng rng(seed);
  std::vector<LabeledSmiles> out;
  std::unordered_set<std::string> seen;
  std::size_t have[2] = {0, 0};
  const std::size_t want[2] = {inactives, actives};
  std::size_t attempts = 0;
  while (have[0] < want[0] || have[1] < want[1]) {
    if (++attempts > (actives + inactives) * 50 + 1000) throw DataError("activity generator stalled");
    const int label = have[1] < want[1] && (have[0] >= want[0] || rng.bernoulli(0.5)) ? 1 : 0;
    MoleculeOptions mo;
    mo.motif = label == 1;
    std::string s = random_molecule(rng, mo);
    if (has_aryl_piperazine(s) != (label == 1)) continue;
    if (smiles::tokenize(s).size() > max_tokens) continue;
    if (!seen.insert(s).second) continue;
    out.push_back({std::move(s), label});
    ++have[label];
  }
  rng.shuffle(out.begin(), out.end());
  return out;
}

bool has_aryl_piperazine(std::string_view text) {
  auto parsed = smiles::parse_molecule(text);
  if (!parsed.ok()) return false;
  const auto& g = parsed.graph();
  for (const auto& ring : smiles::smallest_rings(g)) {
    if (ring.size() != 6) continue;
    int nitrogens = 0;
    bool plain = true;
    for (const int a : ring) {
      const auto& atom = g.atoms()[static_cast<std::size_t>(a)];
      if (atom.aromatic || (atom.element != "C" && atom.element != "N")) plain = false;
      if (atom.element == "N") ++nitrogens;
    }
    if (!plain || nitrogens != 2) continue;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& atom = g.atoms()[static_cast<std::size_t>(ring[i])];
      if (atom.element != "N") continue;
      // Piperazine: the two nitrogens sit opposite each other.
      const auto& opposite = g.atoms()[static_cast<std::size_t>(ring[(i + 3) % 6])];
      if (opposite.element != "N") continue;
      for (const auto& nb : g.neighbors(ring[i])) {
        if (std::find(ring.begin(), ring.end(), nb.atom) != ring.end()) continue;
        const auto& other = g.atoms()[static_cast<std::size_t>(nb.atom)];
        if (other.aromatic && other.element == "C") return true;
      }
    }
  }
  return false;
}

}  // namespace molrl::synth
