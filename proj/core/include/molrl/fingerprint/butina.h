//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_FINGERPRINT_BUTINA_H_
#define MOLRL_FINGERPRINT_BUTINA_H_

#include <cstdint>
#include <span>
#include <vector>

#include "molrl/fingerprint/fingerprint.h"

namespace molrl::fp {

struct Cluster {
  int centroid = 0;
  std::vector<int> members;  // centroid first, then ascending index
};

struct ClusterAssignment {
  std::vector<Cluster> clusters;
};

// Indices j != i with jaccard(i, j) >= cutoff, ascending.
std::vector<std::vector<int>> neighbor_lists(std::span<const Fingerprint> fps, double cutoff);

// Greedy Butina clustering over precomputed neighbor lists: repeatedly take
// the unassigned item with the most unassigned neighbors (lowest index on
// ties) as centroid and claim those neighbors. Singletons become 1-member
// clusters.
ClusterAssignment butina_from_neighbors(const std::vector<std::vector<int>>& neighbors);

ClusterAssignment butina_cluster(std::span<const Fingerprint> fps, double cutoff);

enum class SplitTag { kTest, kValidation, kTrain };

struct SplitIndices {
  std::vector<int> train;
  std::vector<int> validation;
  std::vector<int> test;
  std::vector<SplitTag> cluster_tags;  // per cluster, in input cluster order
};

// Orders clusters by descending size (ties broken by a seeded shuffle) and
// deals them in rounds of six: test, validation, then four to training.
SplitIndices cluster_split(const ClusterAssignment& clusters, std::uint64_t seed);

// Tag of the cluster at 0-based rank `rank` in the dealing order.
SplitTag split_tag_for_rank(std::size_t rank);

}  // namespace molrl::fp

#endif  // MOLRL_FINGERPRINT_BUTINA_H_
