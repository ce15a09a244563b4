#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rumor {

struct SummaryStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quartiles interpolate linearly between order statistics at
// h = (n - 1) p (R's default, type 7).
SummaryStats summary_stats(std::span<const double> samples);

double quantile_sorted(std::span<const double> sorted, double p);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};
using Curve = std::vector<CurvePoint>;

// P(X <= x) evaluated at every distinct sample value.
Curve empirical_cdf(std::span<const double> samples);
// P(X >= x) evaluated at every distinct sample value.
Curve empirical_ccdf(std::span<const double> samples);

double cdf_at(std::span<const double> samples, double x);
double ccdf_at(std::span<const double> samples, double x);

struct Binning {
  enum class Kind { kLinear, kLog, kUnit };
  Kind kind = Kind::kLinear;
  std::size_t bins = 20;
};

// Density estimate: bin count / (N * bin width), reported at bin centres.
// kUnit uses width-one bins centred on integers; kLog requires positive data
// and uses geometric centres. Empty bins are omitted.
Curve empirical_pdf(std::span<const double> samples, Binning binning);

// Mean of y within bins of x, e.g. lifetime as a function of size.
Curve binned_mean(std::span<const double> x, std::span<const double> y,
                  Binning binning);

double sample_mean(std::span<const double> samples);
// Sample standard deviation (n - 1 denominator); 0 for a single value.
double sample_sd(std::span<const double> samples);

}  // namespace rumor
