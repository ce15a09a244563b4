#include "rumor/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "rumor/branching.hpp"
#include "rumor/csv.hpp"
#include "rumor/diffusion.hpp"
#include "rumor/error.hpp"
#include "rumor/metrics.hpp"
#include "rumor/rng.hpp"
#include "rumor/signed_graph.hpp"
#include "rumor/summary.hpp"

namespace rumor {

namespace {

std::vector<double> range(double from, double to, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (to < from) throw ConfigError("grid range is empty");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(std::round((from + step * static_cast<double>(k)) * 1e12) / 1e12);
  return out;
}

std::vector<double> grid_from_json(const nlohmann::json& v) {
  if (v.is_array()) return v.get<std::vector<double>>();
  if (v.is_number()) return {v.get<double>()};
  if (v.is_object())
    return range(v.at("from").get<double>(), v.at("to").get<double>(), v.at("step").get<double>());
  throw ConfigError("grid must be a number, an array or a {from, to, step} range");
}

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw ConfigError(std::string(name) + " grid is empty");
  for (double x : grid)
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(std::string(name) + " values must lie in [0,1]");
}

}  // namespace

SweepConfig default_sweep_config() {
  SweepConfig c;
  c.deltas = range(0.01, 0.05, 0.005);
  c.phi_hl = range(0.5, 1.0, 0.02);
  c.rewiring = {0.01, 0.1, 0.5, 1.0};
  return c;
}

SweepConfig troll_preset() {
  SweepConfig c;
  c.n = 16889;
  c.m = 1072;
  c.z = 16;
  c.deltas = {0.015};
  c.phi_hl = {0.56};
  c.rewiring = {0.01};
  c.first_sharers = InverseGaussian{18.73, 9.63};
  c.iterations = 100;
  return c;
}

SweepConfig sweep_config_from_json(const nlohmann::json& doc, SweepConfig base) {
  SweepConfig c = std::move(base);
  try {
    if (!doc.is_object()) throw ConfigError("sweep config must be a JSON object");
    if (doc.contains("n")) c.n = doc.at("n").get<std::size_t>();
    if (doc.contains("m")) c.m = doc.at("m").get<std::size_t>();
    if (doc.contains("z")) c.z = doc.at("z").get<std::size_t>();
    if (doc.contains("delta")) c.deltas = grid_from_json(doc.at("delta"));
    if (doc.contains("phi_hl")) c.phi_hl = grid_from_json(doc.at("phi_hl"));
    if (doc.contains("r")) c.rewiring = grid_from_json(doc.at("r"));
    if (doc.contains("first_sharers")) c.first_sharers = distribution_from_json(doc.at("first_sharers"));
    if (doc.contains("iterations")) c.iterations = doc.at("iterations").get<std::size_t>();
    if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("output")) c.output = doc.at("output").get<std::string>();
    if (doc.contains("threads")) c.threads = doc.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("malformed sweep config: ") + ex.what());
  } catch (const ParameterError& ex) {
    throw ConfigError(ex.what());
  }
  validate(c);
  return c;
}

nlohmann::json to_json(const SweepConfig& c) {
  return {{"n", c.n},           {"m", c.m},
          {"z", c.z},           {"delta", c.deltas},
          {"phi_hl", c.phi_hl}, {"r", c.rewiring},
          {"first_sharers", to_json(c.first_sharers)},
          {"iterations", c.iterations},
          {"seed", c.seed},     {"output", c.output},
          {"threads", c.threads}};
}

void validate(const SweepConfig& c) {
  check_grid(c.deltas, "delta");
  check_grid(c.phi_hl, "phi_hl");
  check_grid(c.rewiring, "r");
  if (c.iterations < 1) throw ConfigError("iterations must be at least 1");
  if (c.z < 2 || c.z % 2 != 0 || c.z >= c.n)
    throw ConfigError("z must be even, at least 2 and below n");
  try {
    rumor::validate(c.first_sharers);
  } catch (const ParameterError& ex) {
    throw ConfigError(ex.what());
  }
}

std::vector<GridPoint> grid_points(const SweepConfig& c) {
  std::vector<GridPoint> out;
  for (double phi : c.phi_hl)
    for (double r : c.rewiring)
      for (double d : c.deltas) out.push_back({phi, r, d});
  return out;
}

IterationOutcome run_iteration(const SweepConfig& c, std::size_t point_index, std::size_t iteration) {
  const GridPoint point = grid_points(c).at(point_index);
  auto seed = [&](std::uint64_t stream) {
    return derive_seed(c.seed, {point_index, iteration, stream});
  };
  const SignedGraph graph =
      label_edges(generate_small_world(c.n, c.z, point.rewiring, seed(0)), point.phi_hl, seed(1));
  std::vector<std::size_t> counts = sample_first_sharers(c.first_sharers, c.m, seed(2));
  for (std::size_t& k : counts) k = std::min(k, c.n);
  const std::vector<NewsItem> news = make_news(counts, seed(3));
  const std::vector<CascadeOutcome> outcomes = run_batch(graph, news, point.delta, seed(4));

  IterationOutcome out;
  out.sizes.reserve(outcomes.size());
  out.heights.reserve(outcomes.size());
  for (const CascadeOutcome& o : outcomes) {
    out.sizes.push_back(static_cast<double>(tree_size(o.tree)));
    out.heights.push_back(static_cast<double>(tree_height(o.tree)));
  }
  out.first_sharers.assign(counts.begin(), counts.end());
  return out;
}

SweepResult aggregate(const SweepConfig& c, const GridPoint& point,
                      std::span<const IterationOutcome> iterations) {
  std::vector<double> sizes;
  std::vector<double> heights;
  std::vector<double> seeds;
  for (const IterationOutcome& it : iterations) {
    sizes.insert(sizes.end(), it.sizes.begin(), it.sizes.end());
    heights.insert(heights.end(), it.heights.begin(), it.heights.end());
    seeds.insert(seeds.end(), it.first_sharers.begin(), it.first_sharers.end());
  }
  SweepResult r;
  r.point = point;
  r.iterations = iterations.size();
  r.cascades = sizes.size();
  if (sizes.empty()) return r;
  r.mean_size = sample_mean(sizes);
  r.sd_size = sample_sd(sizes);
  r.mean_height = sample_mean(heights);
  r.sd_height = sample_sd(heights);
  r.mean_first_sharers = sample_mean(seeds);

  // q = 1 - phi_hl: a neighbour across a non-homogeneous link never shares.
  BranchingInputs in;
  in.z = c.z;
  in.delta = point.delta;
  in.q = 1.0 - point.phi_hl;
  in.mean_first_sharers = r.mean_first_sharers;
  r.mu_pred = branching_ratio(in, ShareAverage::kTwoDelta);
  r.mu_pred_exact = branching_ratio(in, ShareAverage::kBoundaryExact);
  if (r.mu_pred < 1.0) r.size_pred = expected_cascade_size(r.mean_first_sharers, r.mu_pred);
  if (r.mu_pred_exact < 1.0)
    r.size_pred_exact = expected_cascade_size(r.mean_first_sharers, r.mu_pred_exact);
  if (!r.size_pred)
    r.warning = "supercritical branching ratio " + csv::format(r.mu_pred) +
                ": analytic size prediction diverges";
  return r;
}

std::vector<SweepResult> run_sweep(const SweepConfig& c) {
  validate(c);
  const std::vector<GridPoint> points = grid_points(c);
  const std::size_t units = points.size() * c.iterations;
  std::vector<IterationOutcome> outcomes(units);
  auto work = [&](std::size_t u) { outcomes[u] = run_iteration(c, u / c.iterations, u % c.iterations); };

  const unsigned threads = std::max(1u, std::min<unsigned>(c.threads, static_cast<unsigned>(units)));
  if (threads == 1) {
    for (std::size_t u = 0; u < units; ++u) work(u);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t u = next++; u < units; u = next++) {
            try {
              work(u);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SweepResult> results;
  results.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const std::span<const IterationOutcome> slice(outcomes.data() + p * c.iterations, c.iterations);
    results.push_back(aggregate(c, points[p], slice));
  }
  return results;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepResult> results) {
  out << "phi_hl,r,delta,mean_size,sd_size,mean_height,sd_height,mu_pred,size_pred,iterations,"
         "mu_pred_exact,size_pred_exact\n";
  for (const SweepResult& r : results) {
    out << csv::format(r.point.phi_hl) << ',' << csv::format(r.point.rewiring) << ','
        << csv::format(r.point.delta) << ',' << csv::format(r.mean_size) << ','
        << csv::format(r.sd_size) << ',' << csv::format(r.mean_height) << ','
        << csv::format(r.sd_height) << ',' << csv::format(r.mu_pred) << ','
        << csv::format(r.size_pred) << ',' << r.iterations << ',' << csv::format(r.mu_pred_exact)
        << ',' << csv::format(r.size_pred_exact) << '\n';
  }
}

}  // namespace rumor
