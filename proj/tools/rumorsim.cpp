// Command-line front end: graph generation, cascade simulation, parameter
// sweeps, tree analysis, first-sharer fitting and the two-sample tests.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rumor/analysis.hpp"
#include "rumor/csv.hpp"
#include "rumor/diffusion.hpp"
#include "rumor/first_sharers.hpp"
#include "rumor/hypothesis.hpp"
#include "rumor/power_law.hpp"
#include "rumor/signed_graph.hpp"
#include "rumor/sweep.hpp"

namespace {

using rumor::ParameterError;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParameterError(path + ": " + ex.what());
  }
}

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw ParameterError("cannot write " + path);
  return out;
}

std::vector<double> read_sample(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  auto sample = rumor::csv::read_column(in, column);
  if (sample.empty()) throw ParameterError(path + " holds no values");
  return sample;
}

rumor::FittedDistribution parse_distribution(const std::string& text) {
  if (std::filesystem::exists(text)) return rumor::distribution_from_json(read_json(text));
  try {
    return rumor::distribution_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParameterError(std::string("--first-sharers is neither a file nor JSON: ") + ex.what());
  }
}

struct GraphArgs {
  std::size_t n = 5000;
  std::size_t z = 8;
  double r = 0.01;
  double phi_hl = 1.0;
};

void add_graph_flags(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("--n", g.n, "Node count")->capture_default_str();
  cmd->add_option("--z", g.z, "Ring degree (even)")->capture_default_str();
  cmd->add_option("--r", g.r, "Rewiring probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--phi-hl", g.phi_hl, "Fraction of homogeneous links")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rumor spreading on signed small-world networks"};
  app.require_subcommand(1);

  // generate
  GraphArgs gen;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Build a labeled Watts-Strogatz graph as JSON");
  add_graph_flags(generate, gen);
  generate->add_option("--seed", gen_seed, "RNG seed")->required();
  generate->add_option("--out", gen_out, "Output JSON path")->required();

  // simulate
  GraphArgs sim;
  std::string sim_graph;
  std::size_t sim_m = 1000;
  double sim_delta = 0.015;
  std::string sim_dist = R"({"family":"inverse_gaussian","mean":18.73,"shape":9.63})";
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  unsigned sim_threads = 1;
  bool sim_troll = false;
  auto* simulate = app.add_subcommand("simulate", "Run one batch of cascades and write the sharing trees");
  add_graph_flags(simulate, sim);
  simulate->add_option("--graph", sim_graph, "Read the graph from JSON instead of generating it");
  simulate->add_option("--m", sim_m, "News items")->capture_default_str();
  simulate->add_option("--delta", sim_delta, "Sharing threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--first-sharers", sim_dist, "Distribution as JSON text or file")->capture_default_str();
  simulate->add_flag("--troll", sim_troll, "Use the troll-fit preset for n, m, z, r, phi_hl, delta");
  simulate->add_option("--threads", sim_threads, "Worker threads")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--out", sim_out, "Output tree batch JSON")->required();

  // sweep
  std::string sweep_config;
  std::string sweep_preset = "default";
  std::uint64_t sweep_seed = 0;
  std::string sweep_out;
  std::optional<std::size_t> sweep_iterations;
  std::optional<unsigned> sweep_threads;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (phi_hl, r, delta)");
  sweep->add_option("--config", sweep_config, "JSON SweepConfig file");
  sweep->add_option("--preset", sweep_preset, "Base configuration")
      ->check(CLI::IsMember({"default", "troll"}))
      ->capture_default_str();
  sweep->add_option("--iterations", sweep_iterations, "Override iterations per grid point");
  sweep->add_option("--threads", sweep_threads, "Worker threads");
  sweep->add_option("--seed", sweep_seed, "Master seed")->required();
  sweep->add_option("--out", sweep_out, "Grid CSV path (defaults to the config's output)");

  // analyze
  std::string an_in;
  std::string an_group = "category";
  std::string an_out;
  double an_alpha = 0.05;
  std::size_t an_bins = 20;
  auto* analyze = app.add_subcommand("analyze", "Per-tree metrics, figure curves and group tests");
  analyze->add_option("--in", an_in, "Tree batch JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--group", an_group, "Grouping")->check(CLI::IsMember({"category", "none"}))->capture_default_str();
  analyze->add_option("--alpha", an_alpha, "Significance level")->capture_default_str();
  analyze->add_option("--bins", an_bins, "Histogram bins")->capture_default_str();
  analyze->add_option("--out", an_out, "Output directory")->required();

  // fit-first-sharers
  std::string fit_in;
  std::string fit_column;
  std::uint64_t fit_seed = 0;
  std::string fit_out;
  std::string fit_json;
  auto* fit = app.add_subcommand("fit-first-sharers", "Fit IG/LN/Poisson/uniform models and emit the comparison table");
  fit->add_option("--in", fit_in, "CSV of first-sharer counts")->required()->check(CLI::ExistingFile);
  fit->add_option("--column", fit_column, "Column name (default: first column)");
  fit->add_option("--seed", fit_seed, "Seed for the fitted-model draws")->required();
  fit->add_option("--out", fit_out, "Comparison table CSV")->required();
  fit->add_option("--fits", fit_json, "Also write fitted parameters as JSON");

  // stats-test
  std::string st_a;
  std::string st_b;
  std::string st_column;
  double st_alpha = 0.05;
  std::int64_t st_xmin = 1;
  auto* stats = app.add_subcommand("stats-test", "Two-sample KS test or Wald test on power-law exponents");
  stats->require_subcommand(1);
  auto* ks = stats->add_subcommand("ks", "Two-sample Kolmogorov-Smirnov test");
  auto* wald = stats->add_subcommand("wald", "Wald test on discrete power-law exponents");
  for (auto* cmd : {ks, wald}) {
    cmd->add_option("--a", st_a, "First sample CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--b", st_b, "Second sample CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--column", st_column, "Column name (default: first column)");
    cmd->add_option("--alpha", st_alpha, "Significance level")->capture_default_str();
  }
  wald->add_option("--xmin", st_xmin, "Lower cutoff")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      auto g = rumor::label_edges(rumor::generate_small_world(gen.n, gen.z, gen.r, rumor::derive_seed(gen_seed, {0})),
                                  gen.phi_hl, rumor::derive_seed(gen_seed, {1}));
      open_out(gen_out) << rumor::to_json(g).dump() << '\n';
    } else if (*simulate) {
      if (sim_troll) {
        const auto preset = rumor::troll_preset();
        sim.n = preset.n;
        sim.z = preset.z;
        sim.r = preset.rewiring.front();
        sim.phi_hl = preset.phi_hl.front();
        sim_delta = preset.deltas.front();
        sim_m = preset.m;
      }
      const auto graph =
          sim_graph.empty()
              ? rumor::label_edges(rumor::generate_small_world(sim.n, sim.z, sim.r, rumor::derive_seed(sim_seed, {0})),
                                   sim.phi_hl, rumor::derive_seed(sim_seed, {1}))
              : rumor::graph_from_json(read_json(sim_graph));
      auto counts = rumor::sample_first_sharers(parse_distribution(sim_dist), sim_m, rumor::derive_seed(sim_seed, {2}));
      for (auto& k : counts) k = std::min(k, graph.node_count());
      const auto news = rumor::make_news(counts, rumor::derive_seed(sim_seed, {3}));
      const auto outcomes = rumor::run_batch(graph, news, sim_delta, rumor::derive_seed(sim_seed, {4}), sim_threads);
      std::vector<rumor::SharingTree> trees;
      trees.reserve(outcomes.size());
      for (const auto& o : outcomes) trees.push_back(o.tree);
      open_out(sim_out) << rumor::to_json(std::span<const rumor::SharingTree>(trees)).dump() << '\n';
    } else if (*sweep) {
      rumor::SweepConfig base = sweep_preset == "troll" ? rumor::troll_preset() : rumor::default_sweep_config();
      rumor::SweepConfig config =
          sweep_config.empty() ? base : rumor::sweep_config_from_json(read_json(sweep_config), base);
      config.seed = sweep_seed;
      if (sweep_iterations) config.iterations = *sweep_iterations;
      if (sweep_threads) config.threads = *sweep_threads;
      if (!sweep_out.empty()) config.output = sweep_out;
      if (config.output.empty()) throw rumor::ConfigError("no output path: pass --out or set \"output\"");
      const auto results = rumor::run_sweep(config);
      for (const auto& r : results)
        if (r.warning) std::cerr << "warning: " << *r.warning << '\n';
      auto out = open_out(config.output);
      rumor::write_sweep_csv(out, results);
    } else if (*analyze) {
      const auto trees = rumor::ingest_trees(an_in);
      rumor::AnalysisOptions options;
      options.grouping = an_group == "none" ? rumor::Grouping::kNone : rumor::Grouping::kCategory;
      options.alpha = an_alpha;
      options.bins = an_bins;
      const auto report = rumor::analyze(trees, options);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      rumor::write_report(an_out, report);
    } else if (*fit) {
      const auto sample = read_sample(fit_in, fit_column);
      const auto report = rumor::fit_first_sharers(sample, fit_seed);
      auto out = open_out(fit_out);
      rumor::write_table_csv(out, report.table);
      if (report.fits.excluded_zeros > 0)
        std::cerr << "note: " << report.fits.excluded_zeros << " zero counts excluded from the IG and LN fits\n";
      if (!fit_json.empty()) {
        nlohmann::json doc = {{"poisson", rumor::to_json(report.fits.poisson)},
                              {"uniform", rumor::to_json(report.fits.uniform)},
                              {"excluded_zeros", report.fits.excluded_zeros}};
        doc["inverse_gaussian"] =
            report.fits.inverse_gaussian ? rumor::to_json(*report.fits.inverse_gaussian) : nlohmann::json(nullptr);
        doc["log_normal"] = report.fits.log_normal ? rumor::to_json(*report.fits.log_normal) : nlohmann::json(nullptr);
        open_out(fit_json) << doc.dump(2) << '\n';
      }
    } else if (*stats) {
      const auto a = read_sample(st_a, st_column);
      const auto b = read_sample(st_b, st_column);
      if (*ks) {
        const auto r = rumor::ks_two_sample(a, b, st_alpha);
        std::cout << "D," << rumor::csv::format(r.statistic) << "\nD_alpha," << rumor::csv::format(r.critical)
                  << "\ndecision," << (r.reject ? "reject" : "no-reject") << '\n';
      } else {
        const auto fa = rumor::fit_power_law(a, st_xmin);
        const auto fb = rumor::fit_power_law(b, st_xmin);
        const auto r = rumor::wald_test(fa, fb, st_alpha);
        std::cout << "alpha_a," << rumor::csv::format(fa.alpha) << "\nalpha_b," << rumor::csv::format(fb.alpha)
                  << "\nW," << rumor::csv::format(r.statistic) << "\np_value," << rumor::csv::format(r.p_value)
                  << "\ndecision," << (r.reject ? "reject" : "no-reject") << '\n';
      }
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
