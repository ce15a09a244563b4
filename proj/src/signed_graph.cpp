#include "rumor/signed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "rumor/error.hpp"
#include "rumor/rng.hpp"

namespace rumor {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

SignedGraph::SignedGraph(std::size_t ring_degree, double rewiring,
                         std::vector<double> opinions, std::vector<Edge> edges)
    : ring_degree_(ring_degree),
      rewiring_(rewiring),
      opinions_(std::move(opinions)),
      edges_(std::move(edges)) {
  const std::size_t n = opinions_.size();
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (const Edge& e : edges_) {
    if (e.u >= n || e.v >= n)
      throw ParameterError("edge endpoint out of range");
    if (e.u == e.v) throw ParameterError("self-loop on node " + std::to_string(e.u));
    if (!seen.insert(edge_key(e.u, e.v)).second)
      throw ParameterError("duplicate edge " + std::to_string(e.u) + "-" +
                           std::to_string(e.v));
  }
  for (double w : opinions_)
    if (!(w >= 0.0 && w <= 1.0)) throw ParameterError("opinion outside [0,1]");
  build_incidence();
}

void SignedGraph::build_incidence() {
  const std::size_t n = opinions_.size();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incident_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t id = 0; id < edges_.size(); ++id) {
    incident_[cursor[edges_[id].u]++] = id;
    incident_[cursor[edges_[id].v]++] = id;
  }
}

std::size_t SignedGraph::homogeneous_count() const {
  return static_cast<std::size_t>(std::count_if(
      edges_.begin(), edges_.end(), [](const Edge& e) { return e.homogeneous; }));
}

SignedGraph SignedGraph::with_labels(std::vector<bool> homogeneous) const {
  if (homogeneous.size() != edges_.size())
    throw ParameterError("label vector size does not match edge count");
  SignedGraph copy = *this;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    copy.edges_[i].homogeneous = homogeneous[i];
  return copy;
}

SignedGraph generate_small_world(std::size_t n, std::size_t ring_degree,
                                 double rewiring, std::uint64_t seed) {
  if (ring_degree < 2 || ring_degree % 2 != 0)
    throw ParameterError("ring degree must be even and at least 2");
  if (ring_degree >= n)
    throw ParameterError("ring degree must be smaller than the node count");
  if (!(rewiring >= 0.0 && rewiring <= 1.0))
    throw ParameterError("rewiring probability must lie in [0,1]");
  if (n > UINT32_MAX) throw ParameterError("node count too large");

  Rng rng(seed);
  std::vector<double> opinions(n);
  for (double& w : opinions) w = uniform01(rng);

  const std::size_t half = ring_degree / 2;
  std::vector<Edge> edges;
  edges.reserve(n * half);
  std::unordered_set<std::uint64_t> present;
  present.reserve(n * half * 2);
  // Slot (j-1)*n + i holds the lattice edge (i, i+j) or its rewired image.
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto u = static_cast<NodeId>(i);
      const auto v = static_cast<NodeId>((i + j) % n);
      edges.push_back({u, v, true});
      present.insert(edge_key(u, v));
    }
  }

  std::vector<std::size_t> degree(n, ring_degree);
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (uniform01(rng) >= rewiring) continue;
      const auto u = static_cast<NodeId>(i);
      if (degree[u] >= n - 1) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(uniform_index(rng, n));
      } while (w == u || present.contains(edge_key(u, w)));
      Edge& slot = edges[(j - 1) * n + i];
      present.erase(edge_key(slot.u, slot.v));
      --degree[slot.v];
      slot.v = w;
      ++degree[w];
      present.insert(edge_key(u, w));
    }
  }
  return SignedGraph(ring_degree, rewiring, std::move(opinions), std::move(edges));
}

std::size_t homogeneous_target(std::size_t edge_count, double phi_hl) {
  return static_cast<std::size_t>(
      std::llround(phi_hl * static_cast<double>(edge_count)));
}

SignedGraph label_edges(const SignedGraph& g, double phi_hl, std::uint64_t seed) {
  if (!(phi_hl >= 0.0 && phi_hl <= 1.0))
    throw ParameterError("phi_hl must lie in [0,1]");
  const std::size_t m = g.edge_count();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = m; i > 1; --i)
    std::swap(order[i - 1], order[uniform_index(rng, i)]);
  std::vector<bool> flags(m, false);
  const std::size_t target = homogeneous_target(m, phi_hl);
  for (std::size_t k = 0; k < target; ++k) flags[order[k]] = true;
  return g.with_labels(std::move(flags));
}

nlohmann::json to_json(const SignedGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId i = 0; i < g.node_count(); ++i)
    nodes.push_back({{"id", i}, {"opinion", g.opinion(i)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"homogeneous", e.homogeneous}});
  return {{"n", g.node_count()},
          {"z", g.ring_degree()},
          {"r", g.rewiring()},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

SignedGraph graph_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<double> opinions(n);
    std::vector<bool> have(n, false);
    for (const auto& node : doc.at("nodes")) {
      const auto id = node.at("id").get<std::size_t>();
      if (id >= n || have[id]) throw ParameterError("bad or repeated node id");
      have[id] = true;
      opinions[id] = node.at("opinion").get<double>();
    }
    if (std::find(have.begin(), have.end(), false) != have.end())
      throw ParameterError("node list does not cover every id");
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges"))
      edges.push_back({e.at("u").get<NodeId>(), e.at("v").get<NodeId>(),
                       e.at("homogeneous").get<bool>()});
    return SignedGraph(doc.at("z").get<std::size_t>(), doc.at("r").get<double>(),
                       std::move(opinions), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed graph document: ") + ex.what());
  }
}

}  // namespace rumor
