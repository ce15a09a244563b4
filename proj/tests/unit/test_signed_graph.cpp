#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <set>

#include "rumor/error.hpp"
#include "rumor/signed_graph.hpp"

using namespace rumor;

namespace {

std::size_t diameter(const SignedGraph& g) {
  std::size_t best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    std::vector<std::size_t> dist(g.node_count(), SIZE_MAX);
    std::deque<NodeId> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (auto e : g.incident(u)) {
        const NodeId v = g.other_end(e, u);
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (auto d : dist) best = std::max(best, d);
  }
  return best;
}

}  // namespace

TEST_CASE("small world keeps n*z/2 edges") {
  const auto g = generate_small_world(5000, 8, 0.01, 42);
  CHECK(g.node_count() == 5000);
  CHECK(g.edge_count() == 20000);
  CHECK(g.homogeneous_count() == 20000);
}

TEST_CASE("unrewired ring with z=2 is the cycle") {
  const auto g = generate_small_world(10, 2, 0.0, 7);
  REQUIRE(g.edge_count() == 10);
  std::set<std::pair<NodeId, NodeId>> edges;
  for (const Edge& e : g.edges()) edges.insert(std::minmax(e.u, e.v));
  for (NodeId i = 0; i < 10; ++i) {
    CHECK(g.degree(i) == 2);
    CHECK(edges.count(std::minmax<NodeId>(i, (i + 1) % 10)) == 1);
  }
}

TEST_CASE("fully rewired graphs have mean degree z and spread degrees") {
  double variance_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = generate_small_world(5000, 8, 1.0, seed);
    double sum = 0.0;
    double sq = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
      const auto k = static_cast<double>(g.degree(i));
      sum += k;
      sq += k * k;
    }
    const double mean = sum / 5000.0;
    CHECK(mean == doctest::Approx(8.0).epsilon(1e-12));
    const double var = sq / 5000.0 - mean * mean;
    CHECK(var > 0.0);
    variance_sum += var;
  }
  // Each node keeps z/2 of its own edges; the rest arrive roughly Poisson(z/2).
  CHECK(variance_sum / 100.0 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("handshake identity and simplicity for every rewiring level") {
  for (double r : {0.0, 0.01, 0.1, 0.5, 1.0}) {
    const auto g = generate_small_world(300, 6, r, 11);
    std::size_t degrees = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) degrees += g.degree(i);
    CHECK(degrees == 300u * 6u);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : g.edges()) {
      CHECK(e.u != e.v);
      CHECK(seen.insert(std::minmax(e.u, e.v)).second);
    }
  }
}

TEST_CASE("ring lattice diameter") {
  for (std::size_t n : {10u, 17u, 40u, 99u, 100u}) {
    for (std::size_t z : {2u, 4u, 6u, 8u}) {
      if (z >= n) continue;
      const auto g = generate_small_world(n, z, 0.0, 3);
      // Farthest node is floor(n/2) ring steps away, covered z/2 at a time.
      const std::size_t expected = (n / 2 + z / 2 - 1) / (z / 2);
      CHECK(diameter(g) == expected);
      if (n % 2 == 0) CHECK(expected == static_cast<std::size_t>(std::ceil(static_cast<double>(n) / z)));
    }
  }
}

TEST_CASE("dense rewiring near the complete graph terminates") {
  const auto g = generate_small_world(9, 8, 1.0, 5);
  CHECK(g.edge_count() == 36);
}

TEST_CASE("invalid generator parameters") {
  CHECK_THROWS_AS(generate_small_world(100, 7, 0.1, 1), ParameterError);
  CHECK_THROWS_AS(generate_small_world(8, 8, 0.1, 1), ParameterError);
  CHECK_THROWS_AS(generate_small_world(100, 0, 0.1, 1), ParameterError);
  CHECK_THROWS_AS(generate_small_world(100, 4, 1.5, 1), ParameterError);
  CHECK_THROWS_AS(generate_small_world(100, 4, -0.1, 1), ParameterError);
}

TEST_CASE("opinions lie in the unit interval") {
  const auto g = generate_small_world(2000, 4, 0.2, 9);
  for (double w : g.opinions()) {
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  CHECK(generate_small_world(500, 8, 0.3, 77) == generate_small_world(500, 8, 0.3, 77));
  CHECK_FALSE(generate_small_world(500, 8, 0.3, 77) == generate_small_world(500, 8, 0.3, 78));
}

TEST_CASE("label_edges hits the rounded target exactly") {
  const auto g = generate_small_world(5000, 8, 0.01, 1);
  CHECK(label_edges(g, 1.0, 3).homogeneous_count() == 20000);
  CHECK(label_edges(g, 0.5, 3).homogeneous_count() == 10000);
  CHECK(label_edges(g, 0.56, 3).homogeneous_count() == 11200);
  CHECK(label_edges(g, 0.0, 3).homogeneous_count() == 0);
  CHECK_THROWS_AS(label_edges(g, 1.1, 3), ParameterError);
}

TEST_CASE("homogeneous fraction is exact for arbitrary phi and seed") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto g = generate_small_world(257, 6, 0.2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const double phi = u(rng);
    const auto labeled = label_edges(g, phi, rng());
    CHECK(labeled.homogeneous_count() ==
          static_cast<std::size_t>(std::llround(phi * static_cast<double>(g.edge_count()))));
  }
}

TEST_CASE("relabeling with the same seed is identical and sets are nested") {
  const auto g = generate_small_world(1000, 8, 0.1, 4);
  CHECK(label_edges(g, 0.7, 99) == label_edges(g, 0.7, 99));
  const auto low = label_edges(g, 0.55, 99);
  const auto high = label_edges(g, 0.8, 99);
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (low.edges()[i].homogeneous) CHECK(high.edges()[i].homogeneous);
}

TEST_CASE("graph JSON round trip") {
  const auto g = label_edges(generate_small_world(200, 4, 0.25, 8), 0.6, 2);
  const auto doc = to_json(g);
  CHECK(doc.at("n") == 200);
  CHECK(doc.at("edges").size() == 400);
  const auto back = graph_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back == g);
}

TEST_CASE("graph JSON rejects broken documents") {
  auto doc = to_json(generate_small_world(10, 2, 0.0, 1));
  auto dup = doc;
  dup["edges"].push_back(dup["edges"][0]);
  CHECK_THROWS_AS(graph_from_json(dup), ParameterError);
  auto loop = doc;
  loop["edges"][0]["v"] = loop["edges"][0]["u"];
  CHECK_THROWS_AS(graph_from_json(loop), ParameterError);
  auto missing = doc;
  missing.erase("nodes");
  CHECK_THROWS_AS(graph_from_json(missing), ParameterError);
}
