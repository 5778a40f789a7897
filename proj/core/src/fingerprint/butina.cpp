//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molrl/fingerprint/butina.h"

#include <algorithm>
#include <numeric>

#include "molrl/common/rng.h"

namespace molrl::fp {

std::vector<std::vector<int>> neighbor_lists(std::span<const Fingerprint> fps, double cutoff) {
  std::vector<std::vector<int>> nbrs(fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      if (jaccard(fps[i], fps[j]) >= cutoff) {
        nbrs[i].push_back(static_cast<int>(j));
        nbrs[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto& list : nbrs) std::sort(list.begin(), list.end());
  return nbrs;
}

ClusterAssignment butina_from_neighbors(const std::vector<std::vector<int>>& neighbors) {
  const auto n = neighbors.size();
  std::vector<bool> assigned(n, false);
  std::vector<int> open_count(n);
  for (std::size_t i = 0; i < n; ++i) open_count[i] = static_cast<int>(neighbors[i].size());

  ClusterAssignment out;
  std::size_t remaining = n;
  while (remaining > 0) {
    int best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (assigned[i]) continue;
      if (best < 0 || open_count[i] > open_count[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    }
    Cluster cluster;
    cluster.centroid = best;
    cluster.members.push_back(best);
    assigned[static_cast<std::size_t>(best)] = true;
    for (const int j : neighbors[static_cast<std::size_t>(best)]) {
      if (!assigned[static_cast<std::size_t>(j)]) {
        assigned[static_cast<std::size_t>(j)] = true;
        cluster.members.push_back(j);
      }
    }
    remaining -= cluster.members.size();
    for (const int m : cluster.members) {
      for (const int k : neighbors[static_cast<std::size_t>(m)]) --open_count[static_cast<std::size_t>(k)];
    }
    out.clusters.push_back(std::move(cluster));
  }
  return out;
}

ClusterAssignment butina_cluster(std::span<const Fingerprint> fps, double cutoff) {
  return butina_from_neighbors(neighbor_lists(fps, cutoff));
}

SplitTag split_tag_for_rank(std::size_t rank) {
  switch (rank % 6) {
    case 0: return SplitTag::kTest;
    case 1: return SplitTag::kValidation;
    default: return SplitTag::kTrain;
  }
}

SplitIndices cluster_split(const ClusterAssignment& assignment, std::uint64_t seed) {
  const auto& clusters = assignment.clusters;
  std::vector<std::uint64_t> tiebreak(clusters.size());
  Rng rng(seed);
  for (auto& t : tiebreak) t = rng.next();
  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (clusters[a].members.size() != clusters[b].members.size()) {
      return clusters[a].members.size() > clusters[b].members.size();
    }
    return tiebreak[a] != tiebreak[b] ? tiebreak[a] < tiebreak[b] : a < b;
  });

  SplitIndices out;
  out.cluster_tags.resize(clusters.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto tag = split_tag_for_rank(rank);
    out.cluster_tags[order[rank]] = tag;
    auto& dst = tag == SplitTag::kTest ? out.test : tag == SplitTag::kValidation ? out.validation : out.train;
    const auto& members = clusters[order[rank]].members;
    dst.insert(dst.end(), members.begin(), members.end());
  }
  for (auto* v : {&out.train, &out.validation, &out.test}) std::sort(v->begin(), v->end());
  return out;
}

}  // namespace molrl::fp
