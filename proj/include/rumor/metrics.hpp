#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rumor/sharing_tree.hpp"

namespace rumor {

// Number of sharers; the virtual page root is not a sharer.
std::size_t tree_size(const SharingTree& tree);

// Longest chain of share edges between users. First sharers (and a real
// root) have depth 0, so a seeds-only cascade has height 0 and a root with
// children has height 1.
std::size_t tree_height(const SharingTree& tree);

// Last timestamp minus first; absent for an empty tree.
std::optional<double> lifetime(const SharingTree& tree);

// Mean sigma_i * sigma_j over share edges between users; edges from the
// virtual page root are excluded. Absent when the tree has no such edge.
std::optional<double> mean_edge_homogeneity(const SharingTree& tree);

enum class PathKind {
  kHomogeneous,         // every edge homogeneous
  kShiftedHomogeneous,  // discordant first edge, remaining k - 1 edges homogeneous
  kMixed,
};

struct PathInfo {
  std::int64_t leaf = 0;
  // Edges from the root to the leaf; under a virtual root this includes the
  // page -> first sharer edge, whose homogeneity uses the page sign.
  std::size_t length = 0;
  PathKind kind = PathKind::kHomogeneous;
};

// One entry per leaf, in node order. A lone real root is a path of length 0.
std::vector<PathInfo> path_length_profile(const SharingTree& tree);

std::size_t sharing_paths(const SharingTree& tree);
std::size_t homogeneous_paths(const SharingTree& tree);

struct TreeMetrics {
  std::int64_t news_id = 0;
  Category category = Category::kSynthetic;
  std::size_t size = 0;
  std::size_t height = 0;
  std::optional<double> lifetime;
  std::optional<double> mean_homogeneity;
  std::size_t paths = 0;
  std::size_t homogeneous_paths = 0;
  std::size_t shifted_homogeneous_paths = 0;

  friend bool operator==(const TreeMetrics&, const TreeMetrics&) = default;
};

TreeMetrics compute_metrics(const SharingTree& tree);

// Columns: news_id,category,size,height,lifetime,mean_homogeneity,paths,homo_paths
void write_metrics_csv(std::ostream& out, std::span<const TreeMetrics> rows);

}  // namespace rumor
