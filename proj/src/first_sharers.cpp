#include "rumor/first_sharers.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "rumor/csv.hpp"
#include "rumor/error.hpp"

namespace rumor {

namespace {

std::vector<double> draw_many(const FittedDistribution& dist, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = draw(dist, rng);
  return out;
}

}  // namespace

FirstSharerFits fit_first_sharer_families(std::span<const double> samples) {
  std::vector<double> positive;
  for (double x : samples) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw ParameterError("first-sharer counts must be non-negative");
    if (x > 0.0) positive.push_back(x);
  }
  if (positive.size() < 2) throw ParameterError("need at least two positive first-sharer counts");

  FirstSharerFits fits;
  fits.excluded_zeros = samples.size() - positive.size();

  const double n = static_cast<double>(positive.size());
  const double m = sample_mean(positive);
  double inv_excess = 0.0;
  for (double x : positive) inv_excess += 1.0 / x - 1.0 / m;
  // Constant samples drive the shape estimate to infinity.
  if (inv_excess > 0.0 && std::isfinite(n / inv_excess))
    fits.inverse_gaussian = InverseGaussian{m, n / inv_excess};

  double log_sum = 0.0;
  for (double x : positive) log_sum += std::log(x);
  const double log_mean = log_sum / n;
  double log_ss = 0.0;
  for (double x : positive) log_ss += (std::log(x) - log_mean) * (std::log(x) - log_mean);
  if (log_ss > 0.0) fits.log_normal = LogNormal{log_mean, std::sqrt(log_ss / n)};

  fits.poisson = Poisson{sample_mean(samples)};
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  fits.uniform = Uniform{*lo, *hi};
  fits.empirical =
      Empirical{std::make_shared<const std::vector<double>>(samples.begin(), samples.end())};
  return fits;
}

FirstSharerReport fit_first_sharers(std::span<const double> samples, std::uint64_t seed) {
  FirstSharerReport report;
  report.fits = fit_first_sharer_families(samples);
  const std::size_t n = samples.size();
  FirstSharerTable& table = report.table;
  table.data = summary_stats(samples);
  if (report.fits.inverse_gaussian)
    table.inverse_gaussian =
        summary_stats(draw_many(*report.fits.inverse_gaussian, n, derive_seed(seed, {0})));
  if (report.fits.log_normal)
    table.log_normal = summary_stats(draw_many(*report.fits.log_normal, n, derive_seed(seed, {1})));
  table.poisson = summary_stats(draw_many(report.fits.poisson, n, derive_seed(seed, {2})));
  return report;
}

void write_table_csv(std::ostream& out, const FirstSharerTable& table) {
  struct Row {
    const char* label;
    double SummaryStats::*field;
  };
  static constexpr Row kRows[] = {
      {"Min", &SummaryStats::min},      {"1st Qu.", &SummaryStats::q1},
      {"Median", &SummaryStats::median}, {"Mean", &SummaryStats::mean},
      {"3rd Qu.", &SummaryStats::q3},   {"Max", &SummaryStats::max},
  };
  auto cell = [](const std::optional<SummaryStats>& s, double SummaryStats::*f) {
    return s ? csv::format((*s).*f) : std::string("NA");
  };
  out << "statistic,data,IG,LN,Poi\n";
  for (const Row& row : kRows) {
    out << row.label << ',' << csv::format(table.data.*row.field) << ','
        << cell(table.inverse_gaussian, row.field) << ',' << cell(table.log_normal, row.field)
        << ',' << csv::format(table.poisson.*row.field) << '\n';
  }
}

}  // namespace rumor
