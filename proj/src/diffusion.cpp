#include "rumor/diffusion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace rumor {

namespace {

void check_inputs(const SignedGraph& g, const NewsItem& news, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("sharing threshold must lie in [0,1]");
  if (!(news.fitness >= 0.0 && news.fitness <= 1.0))
    throw ParameterError("news fitness must lie in [0,1]");
  if (news.first_sharers > g.node_count())
    throw SeedingError("news " + std::to_string(news.id) + " has " +
                       std::to_string(news.first_sharers) + " first sharers but the graph has " +
                       std::to_string(g.node_count()) + " nodes");
}

// Floyd's sampling of k distinct values from [0, n), in draw order.
std::vector<NodeId> distinct_nodes(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<NodeId> out;
  out.reserve(k);
  std::unordered_set<NodeId> taken;
  taken.reserve(k * 2);
  for (std::size_t j = n - k; j < n; ++j) {
    auto t = static_cast<NodeId>(uniform_index(rng, j + 1));
    if (taken.contains(t)) t = static_cast<NodeId>(j);
    taken.insert(t);
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> sample_first_sharers(const FittedDistribution& dist, std::size_t m,
                                              std::uint64_t seed) {
  validate(dist);
  Rng rng(seed);
  std::vector<std::size_t> out(m);
  for (std::size_t& count : out) {
    const double x = std::floor(draw(dist, rng));
    count = x > 0.0 ? static_cast<std::size_t>(x) : 0;
  }
  return out;
}

std::vector<NewsItem> make_news(std::span<const std::size_t> first_sharers, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NewsItem> out;
  out.reserve(first_sharers.size());
  for (std::size_t i = 0; i < first_sharers.size(); ++i)
    out.push_back({static_cast<std::int64_t>(i), uniform01(rng), first_sharers[i]});
  return out;
}

CascadeOutcome run_cascade(const SignedGraph& g, const NewsItem& news, double delta,
                           std::uint64_t seed) {
  check_inputs(g, news, delta);
  CascadeOutcome out;
  out.news_id = news.id;
  out.tree.news_id = news.id;
  out.tree.category = Category::kSynthetic;
  out.tree.root = {true, 1};
  if (news.first_sharers == 0) return out;

  Rng rng(seed);
  std::vector<char> shared(g.node_count(), 0);
  std::vector<NodeId> frontier = distinct_nodes(g.node_count(), news.first_sharers, rng);
  for (NodeId s : frontier) {
    shared[s] = 1;
    out.tree.nodes.push_back({s, s, 1.0, 0.0, std::nullopt});
  }

  struct Candidate {
    NodeId parent;
    std::size_t eligible_parents;
  };
  std::unordered_map<NodeId, Candidate> candidates;
  std::vector<NodeId> next;
  for (std::size_t round = 1;; ++round) {
    candidates.clear();
    next.clear();
    for (NodeId u : frontier) {
      for (std::uint32_t e : g.incident(u)) {
        if (!g.edges()[e].homogeneous) continue;
        const NodeId v = g.other_end(e, u);
        if (shared[v] || !shares(g.opinion(v), news.fitness, delta)) continue;
        auto [it, inserted] = candidates.try_emplace(v, Candidate{u, 1});
        if (inserted) {
          next.push_back(v);
        } else if (uniform_index(rng, ++it->second.eligible_parents) == 0) {
          // Reservoir step keeps each eligible parent with equal probability.
          it->second.parent = u;
        }
      }
    }
    if (next.empty()) break;
    for (NodeId v : next) {
      shared[v] = 1;
      out.tree.nodes.push_back(
          {v, v, 1.0, static_cast<double>(round), static_cast<std::int64_t>(candidates.at(v).parent)});
    }
    out.rounds = round;
    frontier.swap(next);
  }
  return out;
}

std::vector<CascadeOutcome> run_batch(const SignedGraph& g, std::span<const NewsItem> news,
                                      double delta, std::uint64_t seed, unsigned threads) {
  for (const NewsItem& item : news) check_inputs(g, item, delta);
  std::vector<CascadeOutcome> out(news.size());
  auto work = [&](std::size_t i) { out[i] = run_cascade(g, news[i], delta, derive_seed(seed, {i})); };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(news.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < news.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < news.size(); i = next++) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rumor
