#include "rumor/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "rumor/csv.hpp"

namespace rumor {

namespace {

// Children lists and a parents-before-children ordering.
struct TreeView {
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> top_down;
  std::vector<std::size_t> parent;  // npos for parentless nodes

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit TreeView(const SharingTree& tree) {
    const std::size_t n = tree.nodes.size();
    std::unordered_map<std::int64_t, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index.emplace(tree.nodes[i].id, i);
    children.resize(n);
    parent.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
      if (!tree.nodes[i].parent) {
        top_down.push_back(i);
        continue;
      }
      parent[i] = index.at(*tree.nodes[i].parent);
      children[parent[i]].push_back(i);
    }
    for (std::size_t k = 0; k < top_down.size(); ++k)
      for (std::size_t c : children[top_down[k]]) top_down.push_back(c);
  }
};

}  // namespace

std::size_t tree_size(const SharingTree& tree) { return tree.nodes.size(); }

std::size_t tree_height(const SharingTree& tree) {
  const TreeView view(tree);
  std::vector<std::size_t> depth(tree.nodes.size(), 0);
  std::size_t height = 0;
  for (std::size_t i : view.top_down) {
    if (view.parent[i] != TreeView::npos) depth[i] = depth[view.parent[i]] + 1;
    height = std::max(height, depth[i]);
  }
  return height;
}

std::optional<double> lifetime(const SharingTree& tree) {
  if (tree.nodes.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(
      tree.nodes.begin(), tree.nodes.end(),
      [](const TreeNode& a, const TreeNode& b) { return a.t < b.t; });
  return hi->t - lo->t;
}

std::optional<double> mean_edge_homogeneity(const SharingTree& tree) {
  const TreeView view(tree);
  double sum = 0.0;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (view.parent[i] == TreeView::npos) continue;
    sum += edge_homogeneity(tree.nodes[view.parent[i]].sigma, tree.nodes[i].sigma);
    ++edges;
  }
  if (edges == 0) return std::nullopt;
  return sum / static_cast<double>(edges);
}

std::vector<PathInfo> path_length_profile(const SharingTree& tree) {
  const TreeView view(tree);
  struct State {
    std::size_t length = 0;
    bool first_homogeneous = true;
    bool rest_homogeneous = true;
  };
  std::vector<State> state(tree.nodes.size());
  for (std::size_t i : view.top_down) {
    const TreeNode& node = tree.nodes[i];
    State& s = state[i];
    const std::size_t p = view.parent[i];
    if (p == TreeView::npos) {
      if (tree.root.is_virtual) {
        s.length = 1;
        s.first_homogeneous = is_homogeneous(edge_homogeneity(tree.root.page_sign, node.sigma));
      }
      continue;
    }
    const bool h = is_homogeneous(edge_homogeneity(tree.nodes[p].sigma, node.sigma));
    s.length = state[p].length + 1;
    if (state[p].length == 0) {
      s.first_homogeneous = h;
    } else {
      s.first_homogeneous = state[p].first_homogeneous;
      s.rest_homogeneous = state[p].rest_homogeneous && h;
    }
  }
  std::vector<PathInfo> out;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (!view.children[i].empty()) continue;
    const State& s = state[i];
    PathKind kind = PathKind::kMixed;
    if (s.rest_homogeneous)
      kind = s.first_homogeneous ? PathKind::kHomogeneous : PathKind::kShiftedHomogeneous;
    out.push_back({tree.nodes[i].id, s.length, kind});
  }
  return out;
}

std::size_t sharing_paths(const SharingTree& tree) { return path_length_profile(tree).size(); }

std::size_t homogeneous_paths(const SharingTree& tree) {
  const auto profile = path_length_profile(tree);
  return static_cast<std::size_t>(std::count_if(profile.begin(), profile.end(), [](const PathInfo& p) {
    return p.kind == PathKind::kHomogeneous;
  }));
}

TreeMetrics compute_metrics(const SharingTree& tree) {
  TreeMetrics m;
  m.news_id = tree.news_id;
  m.category = tree.category;
  m.size = tree_size(tree);
  m.height = tree_height(tree);
  m.lifetime = lifetime(tree);
  m.mean_homogeneity = mean_edge_homogeneity(tree);
  for (const PathInfo& p : path_length_profile(tree)) {
    ++m.paths;
    if (p.kind == PathKind::kHomogeneous) ++m.homogeneous_paths;
    if (p.kind == PathKind::kShiftedHomogeneous) ++m.shifted_homogeneous_paths;
  }
  return m;
}

void write_metrics_csv(std::ostream& out, std::span<const TreeMetrics> rows) {
  out << "news_id,category,size,height,lifetime,mean_homogeneity,paths,homo_paths\n";
  for (const TreeMetrics& m : rows) {
    out << m.news_id << ',' << to_string(m.category) << ',' << m.size << ',' << m.height << ','
        << csv::format(m.lifetime) << ',' << csv::format(m.mean_homogeneity) << ',' << m.paths
        << ',' << m.homogeneous_paths << '\n';
  }
}

}  // namespace rumor
