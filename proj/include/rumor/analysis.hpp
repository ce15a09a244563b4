#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rumor/hypothesis.hpp"
#include "rumor/metrics.hpp"
#include "rumor/sharing_tree.hpp"
#include "rumor/summary.hpp"

namespace rumor {

// Reads and validates a SharingTree JSON batch (an array, or a single tree
// object). Malformed JSON surfaces as TreeValidationError::Kind::kMalformed.
std::vector<SharingTree> ingest_trees(const std::filesystem::path& path);

void write_trees(const std::filesystem::path& path, std::span<const SharingTree> trees);

enum class Grouping { kCategory, kNone };

struct AnalysisOptions {
  Grouping grouping = Grouping::kCategory;
  double alpha = 0.05;
  std::size_t bins = 20;
};

struct GroupAnalysis {
  std::string name;
  std::vector<TreeMetrics> metrics;
  // Keyed by quantity: lifetime_pdf, size_ccdf, height_cdf,
  // mean_homogeneity_pdf, size_vs_lifetime, size_vs_homogeneity,
  // paths_ccdf, homo_paths_ccdf.
  std::map<std::string, Curve> curves;
};

struct Comparison {
  std::string group_a;
  std::string group_b;
  std::string quantity;
  std::string test;  // "ks" or "wald"
  double statistic = 0.0;
  double threshold = 0.0;  // D_alpha for KS, p-value for Wald
  bool reject = false;
};

struct AnalysisReport {
  std::vector<GroupAnalysis> groups;
  std::vector<Comparison> comparisons;
  std::vector<std::string> warnings;
};

AnalysisReport analyze(std::span<const SharingTree> trees, const AnalysisOptions& options = {});

// metrics.csv, <group>_<quantity>.csv per curve and comparisons.csv.
void write_report(const std::filesystem::path& dir, const AnalysisReport& report);

}  // namespace rumor
