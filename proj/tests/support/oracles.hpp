#pragma once

// Reference implementations used only by the tests. Each one takes the most
// direct route available (exhaustive search, linear scans, fixed-step
// quadrature) and shares no code path with the library routine it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "rumor/sharing_tree.hpp"
#include "rumor/signed_graph.hpp"

namespace oracle {

// Composite 5-point Gauss-Legendre on `panels` equal panels.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             int panels = 2000) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    for (int k = 0; k < 5; ++k) total += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return total * 0.5 * h;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double target) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// P(chi^2_1 > w) by quadrature after x = u^2 removes the singularity at 0.
inline double chi_square1_survival(double w) {
  const double inside = gauss_legendre(
      [](double u) { return 2.0 * std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); }, 0.0,
      std::sqrt(w));
  return 1.0 - inside;
}

// K(x) through the Jacobi theta series only.
inline double kolmogorov_theta(double x) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double s = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    s += std::exp(-odd * odd * pi2 / (8.0 * x * x));
  }
  return std::sqrt(2.0 * std::numbers::pi) / x * s;
}

inline double ig_density(double mean, double shape, double x) {
  if (x <= 0.0) return 0.0;
  return std::sqrt(shape / (2.0 * std::numbers::pi * x * x * x)) *
         std::exp(-shape * (x - mean) * (x - mean) / (2.0 * mean * mean * x));
}

// Quantile of IG(mean, shape) by quadrature of the density and bisection.
inline double ig_quantile(double mean, double shape, double p) {
  auto cdf = [&](double x) {
    return gauss_legendre([&](double t) { return ig_density(mean, shape, t); }, 0.0, x, 4000);
  };
  return bisect(cdf, 1e-9, 50.0 * mean, p);
}

// Discrete power law by direct summation of x^-alpha up to `cutoff`,
// with the continuous approximation for the remaining tail mass.
class PowerLawTable {
 public:
  PowerLawTable(double alpha, std::int64_t cutoff = 2'000'000) : alpha_(alpha) {
    double z = 0.0;
    std::vector<double> pmf;
    pmf.reserve(cutoff);
    for (std::int64_t x = 1; x <= cutoff; ++x) {
      pmf.push_back(std::pow(static_cast<double>(x), -alpha));
    }
    for (auto it = pmf.rbegin(); it != pmf.rend(); ++it) z += *it;
    tail_ = std::pow(static_cast<double>(cutoff) + 0.5, 1.0 - alpha) / (alpha - 1.0);
    z += tail_;
    cdf_.resize(pmf.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      acc += pmf[i] / z;
      cdf_[i] = acc;
    }
    norm_ = z;
  }

  std::int64_t draw(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it != cdf_.end()) return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
    // Continuous tail inversion past the table.
    const double cutoff = static_cast<double>(cdf_.size()) + 0.5;
    const double rest = (1.0 - u) * norm_ * (alpha_ - 1.0);
    return static_cast<std::int64_t>(std::max(cutoff, std::pow(rest, 1.0 / (1.0 - alpha_))));
  }

  double normaliser() const { return norm_; }

 private:
  double alpha_;
  double tail_;
  double norm_;
  std::vector<double> cdf_;
};

// Sharer set by fixpoint iteration over the raw edge list.
inline std::set<rumor::NodeId> threshold_closure(const rumor::SignedGraph& g,
                                                 const std::vector<rumor::NodeId>& seeds, double fitness,
                                                 double delta) {
  std::set<rumor::NodeId> in(seeds.begin(), seeds.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const rumor::Edge& e : g.edges()) {
      if (!e.homogeneous) continue;
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (in.count(a) && !in.count(b) && std::abs(g.opinion(b) - fitness) <= delta) {
          in.insert(b);
          grew = true;
        }
      }
    }
  }
  return in;
}

// Linear-scan reference metrics.
inline const rumor::TreeNode* find_node(const rumor::SharingTree& t, std::int64_t id) {
  for (const auto& n : t.nodes)
    if (n.id == id) return &n;
  return nullptr;
}

inline std::size_t naive_height(const rumor::SharingTree& t) {
  std::size_t best = 0;
  for (const auto& n : t.nodes) {
    std::size_t depth = 0;
    for (const rumor::TreeNode* cur = &n; cur->parent; cur = find_node(t, *cur->parent)) ++depth;
    best = std::max(best, depth);
  }
  return best;
}

inline std::optional<double> naive_lifetime(const rumor::SharingTree& t) {
  if (t.nodes.empty()) return std::nullopt;
  double lo = t.nodes[0].t;
  double hi = t.nodes[0].t;
  for (const auto& n : t.nodes) {
    lo = std::min(lo, n.t);
    hi = std::max(hi, n.t);
  }
  return hi - lo;
}

inline std::optional<double> naive_mean_homogeneity(const rumor::SharingTree& t) {
  double sum = 0.0;
  int count = 0;
  for (const auto& n : t.nodes) {
    if (!n.parent) continue;
    sum += find_node(t, *n.parent)->sigma * n.sigma;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

struct NaivePaths {
  std::size_t paths = 0;
  std::size_t homogeneous = 0;
  std::size_t shifted = 0;
};

// Walks every leaf up to the root and inspects the collected edge signs.
inline NaivePaths naive_paths(const rumor::SharingTree& t) {
  NaivePaths out;
  for (const auto& leaf : t.nodes) {
    bool is_parent = false;
    for (const auto& other : t.nodes)
      if (other.parent && *other.parent == leaf.id) is_parent = true;
    if (is_parent) continue;
    std::vector<double> edges;  // leaf-to-root order
    const rumor::TreeNode* cur = &leaf;
    while (cur->parent) {
      const rumor::TreeNode* up = find_node(t, *cur->parent);
      edges.push_back(up->sigma * cur->sigma);
      cur = up;
    }
    if (t.root.is_virtual) edges.push_back(t.root.page_sign * cur->sigma);
    std::reverse(edges.begin(), edges.end());
    ++out.paths;
    bool rest = true;
    for (std::size_t k = 1; k < edges.size(); ++k) rest = rest && edges[k] > 0.0;
    const bool first = edges.empty() || edges[0] > 0.0;
    if (rest && first) ++out.homogeneous;
    if (rest && !first) ++out.shifted;
  }
  return out;
}

}  // namespace oracle
