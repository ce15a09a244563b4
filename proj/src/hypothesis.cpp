#include "rumor/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rumor/error.hpp"

namespace rumor {

namespace {

void check_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("significance level must lie in (0,1)");
}

}  // namespace

double chi_square1_survival(double w) {
  if (w <= 0.0) return 1.0;
  return std::erfc(std::sqrt(0.5 * w));
}

WaldResult wald_test(const PowerLawFit& first, const PowerLawFit& second, double alpha) {
  check_level(alpha);
  if (!(first.variance > 0.0))
    throw DegenerateSampleError("first fit has zero estimator variance");
  WaldResult out;
  const double diff = first.alpha - second.alpha;
  out.statistic = diff * diff / first.variance;
  out.p_value = chi_square1_survival(out.statistic);
  out.reject = out.p_value < alpha;
  return out;
}

double ks_statistic(std::span<const double> first, std::span<const double> second) {
  if (first.empty() || second.empty()) throw ParameterError("KS test needs non-empty samples");
  std::vector<double> a(first.begin(), first.end());
  std::vector<double> b(second.begin(), second.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1.0) {
    // Jacobi theta form, fast for small x.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * pi2 / (8.0 * x * x));
    }
    return std::sqrt(2.0 * std::numbers::pi) / x * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return 1.0 - 2.0 * sum;
}

double kolmogorov_critical(double alpha) {
  check_level(alpha);
  const double target = 1.0 - alpha;
  double lo = 0.0;
  double hi = 10.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

KsResult ks_two_sample(std::span<const double> first, std::span<const double> second,
                       double alpha) {
  check_level(alpha);
  KsResult out;
  out.statistic = ks_statistic(first, second);
  const auto n1 = static_cast<double>(first.size());
  const auto n2 = static_cast<double>(second.size());
  out.critical = kolmogorov_critical(alpha) * std::sqrt((n1 + n2) / (n1 * n2));
  out.reject = out.statistic > out.critical;
  return out;
}

}  // namespace rumor
