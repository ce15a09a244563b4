#include "rumor/summary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rumor/error.hpp"

namespace rumor {

namespace {

std::vector<double> sorted_copy(std::span<const double> samples) {
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  return s;
}

void require_non_empty(std::span<const double> samples) {
  if (samples.empty()) throw ParameterError("empty sample");
}

struct Bins {
  std::vector<double> edges;  // size bins + 1
  bool log = false;

  std::size_t index(double x) const {
    const std::size_t last = edges.size() - 2;
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    if (it == edges.begin()) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1, last);
  }
  double centre(std::size_t k) const {
    return log ? std::sqrt(edges[k] * edges[k + 1]) : 0.5 * (edges[k] + edges[k + 1]);
  }
  double width(std::size_t k) const { return edges[k + 1] - edges[k]; }
};

Bins make_bins(double lo, double hi, Binning binning) {
  if (binning.kind != Binning::Kind::kUnit && binning.bins == 0)
    throw ParameterError("bin count must be positive");
  Bins b;
  switch (binning.kind) {
    case Binning::Kind::kUnit: {
      const double first = std::floor(lo + 0.5) - 0.5;
      const double last = std::floor(hi + 0.5) + 0.5;
      for (double e = first; e <= last + 0.25; e += 1.0) b.edges.push_back(e);
      break;
    }
    case Binning::Kind::kLog: {
      if (lo <= 0.0) throw ParameterError("log binning needs positive data");
      b.log = true;
      const double a = std::log(lo);
      const double step = (std::log(hi) - a) / static_cast<double>(binning.bins);
      for (std::size_t k = 0; k <= binning.bins; ++k)
        b.edges.push_back(std::exp(a + step * static_cast<double>(k)));
      b.edges.front() = lo;
      b.edges.back() = hi;
      break;
    }
    case Binning::Kind::kLinear: {
      const double step = (hi - lo) / static_cast<double>(binning.bins);
      for (std::size_t k = 0; k <= binning.bins; ++k)
        b.edges.push_back(lo + step * static_cast<double>(k));
      b.edges.back() = hi;
      break;
    }
  }
  return b;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  require_non_empty(sorted);
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double sample_mean(std::span<const double> samples) {
  require_non_empty(samples);
  return std::accumulate(samples.begin(), samples.end(), 0.0) /
         static_cast<double>(samples.size());
}

double sample_sd(std::span<const double> samples) {
  const double m = sample_mean(samples);
  if (samples.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : samples) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

SummaryStats summary_stats(std::span<const double> samples) {
  require_non_empty(samples);
  const auto s = sorted_copy(samples);
  SummaryStats out;
  out.min = s.front();
  out.q1 = quantile_sorted(s, 0.25);
  out.median = quantile_sorted(s, 0.5);
  out.mean = sample_mean(samples);
  out.q3 = quantile_sorted(s, 0.75);
  out.max = s.back();
  // Guard the mean against rounding past the extremes for constant samples.
  out.mean = std::clamp(out.mean, out.min, out.max);
  return out;
}

double cdf_at(std::span<const double> samples, double x) {
  require_non_empty(samples);
  const auto count = std::count_if(samples.begin(), samples.end(),
                                   [x](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(samples.size());
}

double ccdf_at(std::span<const double> samples, double x) {
  require_non_empty(samples);
  const auto count = std::count_if(samples.begin(), samples.end(),
                                   [x](double v) { return v >= x; });
  return static_cast<double>(count) / static_cast<double>(samples.size());
}

Curve empirical_cdf(std::span<const double> samples) {
  require_non_empty(samples);
  const auto s = sorted_copy(samples);
  const auto n = static_cast<double>(s.size());
  Curve out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
    out.push_back({s[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

Curve empirical_ccdf(std::span<const double> samples) {
  require_non_empty(samples);
  const auto s = sorted_copy(samples);
  const auto n = static_cast<double>(s.size());
  Curve out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && s[i - 1] == s[i]) continue;
    out.push_back({s[i], static_cast<double>(s.size() - i) / n});
  }
  return out;
}

Curve empirical_pdf(std::span<const double> samples, Binning binning) {
  require_non_empty(samples);
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  // A point mass has no width to spread over; report it with mass one.
  if (*lo_it == *hi_it && binning.kind != Binning::Kind::kUnit)
    return {{*lo_it, 1.0}};
  const Bins bins = make_bins(*lo_it, *hi_it, binning);
  std::vector<std::size_t> counts(bins.edges.size() - 1, 0);
  for (double x : samples) ++counts[bins.index(x)];
  const auto n = static_cast<double>(samples.size());
  Curve out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    out.push_back({bins.centre(k), static_cast<double>(counts[k]) / (n * bins.width(k))});
  }
  return out;
}

Curve binned_mean(std::span<const double> x, std::span<const double> y,
                  Binning binning) {
  require_non_empty(x);
  if (x.size() != y.size()) throw ParameterError("x and y lengths differ");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  if (*lo_it == *hi_it && binning.kind != Binning::Kind::kUnit)
    return {{*lo_it, sample_mean(y)}};
  const Bins bins = make_bins(*lo_it, *hi_it, binning);
  std::vector<double> sums(bins.edges.size() - 1, 0.0);
  std::vector<std::size_t> counts(sums.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t k = bins.index(x[i]);
    sums[k] += y[i];
    ++counts[k];
  }
  Curve out;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (counts[k] == 0) continue;
    out.push_back({bins.centre(k), sums[k] / static_cast<double>(counts[k])});
  }
  return out;
}

}  // namespace rumor
