//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/smiles/rings.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace molrl::smiles {
namespace {

// Shortest path from `from` to `to` that does not use `banned_bond`; returns
// the bond indices along it, or empty when unreachable.
std::vector<int> shortest_path_bonds(const MoleculeGraph& g, int from, int to, int banned_bond) {
  const auto n = static_cast<std::size_t>(g.num_atoms());
  std::vector<int> via_bond(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(from);
  seen[static_cast<std::size_t>(from)] = true;
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    if (cur == to) break;
    for (const auto& nb : g.neighbors(cur)) {
      if (nb.bond == banned_bond || seen[static_cast<std::size_t>(nb.atom)]) continue;
      seen[static_cast<std::size_t>(nb.atom)] = true;
      via_bond[static_cast<std::size_t>(nb.atom)] = nb.bond;
      frontier.push(nb.atom);
    }
  }
  if (!seen[static_cast<std::size_t>(to)]) return {};
  std::vector<int> path;
  for (int cur = to; cur != from;) {
    const int b = via_bond[static_cast<std::size_t>(cur)];
    path.push_back(b);
    cur = g.bonds()[static_cast<std::size_t>(b)].other(cur);
  }
  return path;
}

std::vector<int> ring_atoms_in_order(const MoleculeGraph& g, const std::vector<int>& bonds) {
  // Walk the cycle starting from the first bond.
  std::vector<int> atoms;
  std::set<int> remaining(bonds.begin(), bonds.end());
  const auto& first = g.bonds()[static_cast<std::size_t>(bonds.front())];
  int cur = first.end;
  atoms.push_back(first.begin);
  remaining.erase(bonds.front());
  while (!remaining.empty()) {
    atoms.push_back(cur);
    int next_bond = -1;
    for (const auto& nb : g.neighbors(cur)) {
      if (remaining.count(nb.bond)) {
        next_bond = nb.bond;
        break;
      }
    }
    if (next_bond < 0) break;
    remaining.erase(next_bond);
    cur = g.bonds()[static_cast<std::size_t>(next_bond)].other(cur);
  }
  return atoms;
}

}  // namespace

std::vector<bool> ring_bond_flags(const MoleculeGraph& g) {
  // Tarjan bridge finding.
  const auto n = static_cast<std::size_t>(g.num_atoms());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> in_ring(static_cast<std::size_t>(g.num_bonds()), true);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int u, int parent_bond) {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    for (const auto& nb : g.neighbors(u)) {
      if (nb.bond == parent_bond) continue;
      const auto v = static_cast<std::size_t>(nb.atom);
      if (disc[v] < 0) {
        dfs(nb.atom, nb.bond);
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[v]);
        if (low[v] > disc[static_cast<std::size_t>(u)]) {
          in_ring[static_cast<std::size_t>(nb.bond)] = false;
        }
      } else {
        low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], disc[v]);
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (disc[i] < 0) dfs(static_cast<int>(i), -1);
  }
  return in_ring;
}

std::vector<std::vector<int>> smallest_rings(const MoleculeGraph& g) {
  const int rank = g.num_bonds() - g.num_atoms() + g.num_components();
  if (rank <= 0) return {};
  const auto in_ring = ring_bond_flags(g);

  // Candidate cycles: each ring bond closed by the shortest path around it.
  std::vector<std::vector<int>> candidates;
  std::set<std::vector<int>> unique;
  for (int b = 0; b < g.num_bonds(); ++b) {
    if (!in_ring[static_cast<std::size_t>(b)]) continue;
    const auto& bond = g.bonds()[static_cast<std::size_t>(b)];
    auto path = shortest_path_bonds(g, bond.begin, bond.end, b);
    if (path.empty()) continue;
    path.push_back(b);
    std::sort(path.begin(), path.end());
    if (unique.insert(path).second) candidates.push_back(path);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  // Greedy selection of cycles independent over GF(2) on bond incidence.
  const auto m = static_cast<std::size_t>(g.num_bonds());
  std::vector<std::vector<bool>> basis;  // reduced rows
  std::vector<std::size_t> pivots;
  std::vector<std::vector<int>> rings;
  for (const auto& cand : candidates) {
    std::vector<bool> row(m, false);
    for (const int b : cand) row[static_cast<std::size_t>(b)] = true;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (row[pivots[k]]) {
        for (std::size_t j = 0; j < m; ++j) row[j] = row[j] != basis[k][j];
      }
    }
    const auto it = std::find(row.begin(), row.end(), true);
    if (it == row.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - row.begin()));
    basis.push_back(std::move(row));
    rings.push_back(ring_atoms_in_order(g, cand));
    if (static_cast<int>(rings.size()) == rank) break;
  }
  return rings;
}

}  // namespace molrl::smiles
