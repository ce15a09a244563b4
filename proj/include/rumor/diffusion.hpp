#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rumor/distributions.hpp"
#include "rumor/error.hpp"
#include "rumor/sharing_tree.hpp"
#include "rumor/signed_graph.hpp"

namespace rumor {

struct NewsItem {
  std::int64_t id = 0;
  double fitness = 0.5;  // theta in [0, 1]
  std::size_t first_sharers = 1;
};

struct CascadeOutcome {
  std::int64_t news_id = 0;
  SharingTree tree;
  // Index of the last round that added sharers; 0 for seeds-only or empty.
  std::size_t rounds = 0;

  friend bool operator==(const CascadeOutcome&, const CascadeOutcome&) = default;
};

class SeedingError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// m draws truncated to their integer part (negative draws become 0).
std::vector<std::size_t> sample_first_sharers(const FittedDistribution& dist, std::size_t m,
                                              std::uint64_t seed);

// News items with ids 0..k-1, the given first-sharer counts and i.i.d.
// uniform fitness.
std::vector<NewsItem> make_news(std::span<const std::size_t> first_sharers, std::uint64_t seed);

inline bool shares(double opinion, double fitness, double delta) {
  return std::abs(opinion - fitness) <= delta;
}

// Synchronous threshold cascade. The first sharers, drawn uniformly without
// replacement, share unconditionally in round 0 under a virtual page root.
// In round k+1 every non-sharer joined to a round-k sharer by a homogeneous
// edge shares iff |opinion - fitness| <= delta; its parent is chosen
// uniformly among those round-k neighbours. Tree timestamps are rounds and
// every sharer carries polarization +1 under a +1 page.
CascadeOutcome run_cascade(const SignedGraph& g, const NewsItem& news, double delta,
                           std::uint64_t seed);

// Item i runs with derive_seed(seed, {i}); output order follows the input
// regardless of how many worker threads are used.
std::vector<CascadeOutcome> run_batch(const SignedGraph& g, std::span<const NewsItem> news,
                                      double delta, std::uint64_t seed, unsigned threads = 1);

}  // namespace rumor
