#include "rumor/analysis.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "rumor/csv.hpp"
#include "rumor/error.hpp"
#include "rumor/power_law.hpp"

namespace rumor {

namespace {

using Extractor = std::function<std::optional<double>(const TreeMetrics&)>;

struct Quantity {
  const char* name;
  Extractor extract;
};

const std::vector<Quantity>& compared_quantities() {
  static const std::vector<Quantity> q = {
      {"size", [](const TreeMetrics& m) { return std::optional<double>(static_cast<double>(m.size)); }},
      {"height", [](const TreeMetrics& m) { return std::optional<double>(static_cast<double>(m.height)); }},
      {"lifetime", [](const TreeMetrics& m) { return m.lifetime; }},
      {"mean_homogeneity", [](const TreeMetrics& m) { return m.mean_homogeneity; }},
      {"paths", [](const TreeMetrics& m) { return std::optional<double>(static_cast<double>(m.paths)); }},
      {"homo_paths",
       [](const TreeMetrics& m) { return std::optional<double>(static_cast<double>(m.homogeneous_paths)); }},
  };
  return q;
}

std::vector<double> values(std::span<const TreeMetrics> rows, const Extractor& f) {
  std::vector<double> out;
  for (const TreeMetrics& m : rows)
    if (auto v = f(m)) out.push_back(*v);
  return out;
}

GroupAnalysis analyze_group(std::string name, std::vector<TreeMetrics> rows, std::size_t bins,
                            std::vector<std::string>& warnings) {
  GroupAnalysis g;
  g.name = std::move(name);
  g.metrics = std::move(rows);
  const auto& q = compared_quantities();
  const Binning linear{Binning::Kind::kLinear, bins};

  auto note_empty = [&](const char* curve) {
    warnings.push_back("group '" + g.name + "': no data for " + curve + ", curve skipped");
  };

  const auto sizes = values(g.metrics, q[0].extract);
  const auto heights = values(g.metrics, q[1].extract);
  const auto lifetimes = values(g.metrics, q[2].extract);
  const auto homogeneity = values(g.metrics, q[3].extract);
  g.curves["size_ccdf"] = empirical_ccdf(sizes);
  g.curves["height_cdf"] = empirical_cdf(heights);
  g.curves["paths_ccdf"] = empirical_ccdf(values(g.metrics, q[4].extract));
  g.curves["homo_paths_ccdf"] = empirical_ccdf(values(g.metrics, q[5].extract));
  if (lifetimes.empty()) {
    note_empty("lifetime_pdf");
  } else {
    g.curves["lifetime_pdf"] = empirical_pdf(lifetimes, linear);
  }
  if (homogeneity.empty()) {
    note_empty("mean_homogeneity_pdf");
  } else {
    g.curves["mean_homogeneity_pdf"] = empirical_pdf(homogeneity, linear);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const TreeMetrics& m : g.metrics) {
    if (m.size == 0 || !m.lifetime) continue;
    xs.push_back(static_cast<double>(m.size));
    ys.push_back(*m.lifetime);
  }
  if (xs.empty()) {
    note_empty("size_vs_lifetime");
  } else {
    g.curves["size_vs_lifetime"] = binned_mean(xs, ys, {Binning::Kind::kLog, bins});
  }
  xs.clear();
  ys.clear();
  for (const TreeMetrics& m : g.metrics) {
    if (!m.mean_homogeneity) continue;
    xs.push_back(*m.mean_homogeneity);
    ys.push_back(static_cast<double>(m.size));
  }
  if (xs.empty()) {
    note_empty("size_vs_homogeneity");
  } else {
    g.curves["size_vs_homogeneity"] = binned_mean(xs, ys, linear);
  }
  return g;
}

}  // namespace

std::vector<SharingTree> ingest_trees(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw TreeValidationError(TreeValidationError::Kind::kMalformed, -1, std::nullopt,
                              std::string("malformed JSON: ") + ex.what());
  }
  if (doc.is_object()) return {tree_from_json(doc)};
  return trees_from_json(doc);
}

void write_trees(const std::filesystem::path& path, std::span<const SharingTree> trees) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << to_json(trees).dump() << '\n';
}

AnalysisReport analyze(std::span<const SharingTree> trees, const AnalysisOptions& options) {
  if (trees.empty()) throw ParameterError("no trees to analyze");
  AnalysisReport report;

  std::map<std::string, std::vector<TreeMetrics>> grouped;
  for (const SharingTree& t : trees) {
    const std::string key =
        options.grouping == Grouping::kCategory ? std::string(to_string(t.category)) : "all";
    grouped[key].push_back(compute_metrics(t));
  }
  // Deterministic group order: category enum order, independent of input order.
  std::vector<std::string> canonical;
  for (Category c : {Category::kScience, Category::kConspiracy, Category::kTroll, Category::kSynthetic})
    if (grouped.contains(std::string(to_string(c)))) canonical.emplace_back(to_string(c));
  if (grouped.contains("all")) canonical.emplace_back("all");

  for (const std::string& name : canonical)
    report.groups.push_back(analyze_group(name, std::move(grouped[name]), options.bins, report.warnings));

  for (std::size_t i = 0; i < report.groups.size(); ++i) {
    for (std::size_t j = i + 1; j < report.groups.size(); ++j) {
      const GroupAnalysis& a = report.groups[i];
      const GroupAnalysis& b = report.groups[j];
      for (const Quantity& q : compared_quantities()) {
        const auto va = values(a.metrics, q.extract);
        const auto vb = values(b.metrics, q.extract);
        if (va.empty() || vb.empty()) {
          report.warnings.push_back(std::string("KS on ") + q.name + " skipped for " + a.name + " vs " +
                                    b.name + ": empty sample");
          continue;
        }
        const KsResult ks = ks_two_sample(va, vb, options.alpha);
        report.comparisons.push_back({a.name, b.name, q.name, "ks", ks.statistic, ks.critical, ks.reject});
      }
      try {
        const auto sa = values(a.metrics, compared_quantities()[0].extract);
        const auto sb = values(b.metrics, compared_quantities()[0].extract);
        const WaldResult w = wald_test(fit_power_law(sa, 1), fit_power_law(sb, 1), options.alpha);
        report.comparisons.push_back({a.name, b.name, "size_exponent", "wald", w.statistic, w.p_value, w.reject});
      } catch (const DegenerateSampleError& ex) {
        report.warnings.push_back("Wald test on size exponents skipped for " + a.name + " vs " + b.name +
                                  ": " + ex.what());
      }
    }
  }
  return report;
}

void write_report(const std::filesystem::path& dir, const AnalysisReport& report) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name);
    if (!out) throw ParameterError("cannot write " + (dir / name).string());
    return out;
  };
  {
    std::vector<TreeMetrics> all;
    for (const GroupAnalysis& g : report.groups) all.insert(all.end(), g.metrics.begin(), g.metrics.end());
    auto out = open("metrics.csv");
    write_metrics_csv(out, all);
  }
  for (const GroupAnalysis& g : report.groups) {
    for (const auto& [quantity, curve] : g.curves) {
      auto out = open(g.name + "_" + quantity + ".csv");
      csv::write_curve(out, curve);
    }
  }
  auto out = open("comparisons.csv");
  out << "group_a,group_b,quantity,test,statistic,threshold,reject\n";
  for (const Comparison& c : report.comparisons) {
    out << c.group_a << ',' << c.group_b << ',' << c.quantity << ',' << c.test << ','
        << csv::format(c.statistic) << ',' << csv::format(c.threshold) << ',' << (c.reject ? 1 : 0) << '\n';
  }
}

}  // namespace rumor
