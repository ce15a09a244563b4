#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace rumor {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  bool homogeneous = true;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected simple graph with a per-node opinion and a per-edge
// homogeneous / non-homogeneous flag. Immutable once built; labeling
// returns a relabeled copy.
class SignedGraph {
 public:
  SignedGraph(std::size_t ring_degree, double rewiring,
              std::vector<double> opinions, std::vector<Edge> edges);

  std::size_t node_count() const { return opinions_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t ring_degree() const { return ring_degree_; }
  double rewiring() const { return rewiring_; }

  double opinion(NodeId i) const { return opinions_[i]; }
  std::span<const double> opinions() const { return opinions_; }
  std::span<const Edge> edges() const { return edges_; }

  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  // Incident edge ids of node i.
  std::span<const std::uint32_t> incident(NodeId i) const {
    return {incident_.data() + offsets_[i], degree(i)};
  }
  NodeId other_end(std::uint32_t edge, NodeId from) const {
    const Edge& e = edges_[edge];
    return e.u == from ? e.v : e.u;
  }

  std::size_t homogeneous_count() const;

  SignedGraph with_labels(std::vector<bool> homogeneous) const;

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.ring_degree_ == b.ring_degree_ && a.rewiring_ == b.rewiring_ &&
           a.opinions_ == b.opinions_ && a.edges_ == b.edges_;
  }

 private:
  void build_incidence();

  std::size_t ring_degree_;
  double rewiring_;
  std::vector<double> opinions_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> incident_;
};

// Watts-Strogatz small world: ring lattice of n nodes each joined to its
// ring_degree nearest neighbours, then every lattice edge (i, i+j) has its
// far endpoint moved with probability `rewiring` to a uniform node that
// keeps the graph simple. Opinions are i.i.d. uniform on [0, 1]; all edges
// start homogeneous.
SignedGraph generate_small_world(std::size_t n, std::size_t ring_degree,
                                 double rewiring, std::uint64_t seed);

// Flags exactly round(phi_hl * M) edges homogeneous. The edges are the
// prefix of a seeded random permutation, so for a fixed seed the
// homogeneous sets are nested in phi_hl.
SignedGraph label_edges(const SignedGraph& g, double phi_hl,
                        std::uint64_t seed);

std::size_t homogeneous_target(std::size_t edge_count, double phi_hl);

nlohmann::json to_json(const SignedGraph& g);
SignedGraph graph_from_json(const nlohmann::json& doc);

}  // namespace rumor
