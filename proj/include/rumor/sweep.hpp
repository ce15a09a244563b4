#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rumor/distributions.hpp"

namespace rumor {

struct SweepConfig {
  std::size_t n = 5000;
  std::size_t m = 1000;
  std::size_t z = 8;  // ring degree: each node's lattice neighbours in total
  std::vector<double> deltas;
  std::vector<double> phi_hl;
  std::vector<double> rewiring;
  FittedDistribution first_sharers = InverseGaussian{18.73, 9.63};
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  std::string output;
  unsigned threads = 1;
};

// delta 0.01..0.05 step 0.005, phi_hl 0.5..1 step 0.02, r in {0.01, 0.1, 0.5, 1}.
SweepConfig default_sweep_config();

// Single grid point fitted to the troll sample: 16889 users, 1072 items,
// IG(18.73, 9.63) first sharers, (phi_hl, r, delta) = (0.56, 0.01, 0.015).
// The lattice joins each node to 8 neighbours on either side (ring degree 16).
SweepConfig troll_preset();

// Reads the SweepConfig fields on top of `base`. Grids are either arrays or
// {"from", "to", "step"} ranges.
SweepConfig sweep_config_from_json(const nlohmann::json& doc, SweepConfig base = default_sweep_config());
nlohmann::json to_json(const SweepConfig& config);

void validate(const SweepConfig& config);

struct GridPoint {
  double phi_hl = 1.0;
  double rewiring = 0.0;
  double delta = 0.0;
};

// Canonical order: phi_hl outermost, then r, then delta.
std::vector<GridPoint> grid_points(const SweepConfig& config);

// Sizes, heights and first-sharer counts of the m cascades of one
// (grid point, iteration) unit. Seeds: derive_seed(master, {point, iteration, stream})
// with streams 0 graph, 1 edge labels, 2 first-sharer counts, 3 fitness, 4 cascades.
struct IterationOutcome {
  std::vector<double> sizes;
  std::vector<double> heights;
  std::vector<double> first_sharers;  // truncated at n
};

IterationOutcome run_iteration(const SweepConfig& config, std::size_t point_index,
                               std::size_t iteration);

struct SweepResult {
  GridPoint point;
  double mean_size = 0.0;
  double sd_size = 0.0;
  double mean_height = 0.0;
  double sd_height = 0.0;
  double mean_first_sharers = 0.0;
  double mu_pred = 0.0;                  // z phi_hl 2 delta
  std::optional<double> size_pred;       // absent when supercritical
  double mu_pred_exact = 0.0;            // z phi_hl (2 delta - delta^2)
  std::optional<double> size_pred_exact;
  std::size_t iterations = 0;
  std::size_t cascades = 0;
  std::optional<std::string> warning;
};

// Pools every cascade of every iteration, in iteration order.
SweepResult aggregate(const SweepConfig& config, const GridPoint& point,
                      std::span<const IterationOutcome> iterations);

std::vector<SweepResult> run_sweep(const SweepConfig& config);

// Columns: phi_hl,r,delta,mean_size,sd_size,mean_height,sd_height,mu_pred,
// size_pred,iterations,mu_pred_exact,size_pred_exact
void write_sweep_csv(std::ostream& out, std::span<const SweepResult> results);

}  // namespace rumor
