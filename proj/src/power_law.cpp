#include "rumor/power_law.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "rumor/error.hpp"

namespace rumor {

namespace {

// B_{2j} / (2j)! for j = 1..8.
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

double log_zeta(double s, double q) { return std::log(hurwitz_zeta(s, q)); }

// d^2/ds^2 log zeta(s, q), central differences with one Richardson step.
double log_zeta_curvature(double s, double q) {
  auto second = [&](double h) {
    return (log_zeta(s + h, q) - 2.0 * log_zeta(s, q) + log_zeta(s - h, q)) / (h * h);
  };
  const double h = std::min(1e-2, 0.5 * (s - 1.0));
  return (4.0 * second(h / 2.0) - second(h)) / 3.0;
}

struct Tail {
  std::size_t n = 0;
  double mean_log = 0.0;
  bool all_equal = true;
};

Tail collect_tail(std::span<const double> samples, std::int64_t x_min) {
  Tail t;
  double first = 0.0;
  double sum_log = 0.0;
  for (double x : samples) {
    if (x != std::floor(x)) throw ParameterError("power-law samples must be integers");
    if (x < static_cast<double>(x_min)) continue;
    if (t.n == 0) first = x;
    t.all_equal = t.all_equal && x == first;
    sum_log += std::log(x);
    ++t.n;
  }
  if (t.n > 0) t.mean_log = sum_log / static_cast<double>(t.n);
  return t;
}

// P(X <= x) for the fitted model with normaliser zeta(alpha, x_min).
double model_cdf(double alpha, double norm, std::int64_t x) {
  return 1.0 - hurwitz_zeta(alpha, static_cast<double>(x + 1)) / norm;
}

}  // namespace

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0)) throw ParameterError("Hurwitz zeta requires s > 1");
  if (!(q > 0.0)) throw ParameterError("Hurwitz zeta requires q > 0");
  constexpr int kDirect = 16;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  const double a_pow = std::pow(a, -s);
  sum += a * a_pow / (s - 1.0) + 0.5 * a_pow;
  double rising = s;
  double power = a_pow / a;
  const double inv_a2 = 1.0 / (a * a);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum += kBernoulliOverFactorial[j] * rising * power;
    const double k = 2.0 * static_cast<double>(j + 1);
    rising *= (s + k - 1.0) * (s + k);
    power *= inv_a2;
  }
  return sum;
}

PowerLawFit fit_power_law(std::span<const double> samples, std::int64_t x_min) {
  if (x_min < 1) throw ParameterError("x_min must be at least 1");
  const Tail tail = collect_tail(samples, x_min);
  if (tail.n < 2) throw DegenerateSampleError("fewer than two samples at or above x_min");
  if (tail.all_equal) throw DegenerateSampleError("all tail samples are equal");

  const auto q = static_cast<double>(x_min);
  auto nll = [&](double a) { return log_zeta(a, q) + a * tail.mean_log; };

  // The per-sample negative log-likelihood is convex in alpha.
  double lo = 1.0 + 1e-9;
  double hi = 2.0;
  while (nll(hi + 1.0) < nll(hi) && hi < 200.0) hi += hi;
  hi += 1.0;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = nll(c);
  double fd = nll(d);
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = nll(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = nll(d);
    }
  }
  PowerLawFit fit;
  fit.alpha = 0.5 * (lo + hi);
  fit.x_min = x_min;
  fit.n_tail = tail.n;
  fit.log_likelihood = -static_cast<double>(tail.n) * nll(fit.alpha);
  const double info = log_zeta_curvature(fit.alpha, q);
  if (!(info > 0.0) || !(fit.alpha > 1.0))
    throw DegenerateSampleError("power-law fit did not converge to alpha > 1");
  fit.variance = 1.0 / (static_cast<double>(tail.n) * info);
  return fit;
}

PowerLawFit fit_power_law_select_xmin(std::span<const double> samples,
                                      std::size_t min_tail) {
  std::vector<double> sorted;
  for (double x : samples)
    if (x >= 1.0) sorted.push_back(x);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() < 2) throw DegenerateSampleError("fewer than two positive samples");
  min_tail = std::max<std::size_t>(min_tail, 2);

  bool found = false;
  PowerLawFit best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start < sorted.size();) {
    const std::size_t tail_n = sorted.size() - start;
    if (tail_n < min_tail) break;
    const auto x_min = static_cast<std::int64_t>(sorted[start]);
    const std::span<const double> tail(sorted.data() + start, tail_n);
    if (tail.front() == tail.back()) break;
    const PowerLawFit fit = fit_power_law(tail, x_min);
    const double norm = hurwitz_zeta(fit.alpha, static_cast<double>(x_min));
    double distance = 0.0;
    for (std::size_t i = 0; i < tail_n; ++i) {
      if (i + 1 < tail_n && tail[i + 1] == tail[i]) continue;
      const double empirical = static_cast<double>(i + 1) / static_cast<double>(tail_n);
      const double model =
          model_cdf(fit.alpha, norm, static_cast<std::int64_t>(tail[i]));
      distance = std::max(distance, std::abs(empirical - model));
    }
    if (distance < best_distance) {
      best_distance = distance;
      best = fit;
      found = true;
    }
    const double here = sorted[start];
    while (start < sorted.size() && sorted[start] == here) ++start;
  }
  if (!found) throw DegenerateSampleError("no admissible x_min");
  return best;
}

DiscretePowerLaw::DiscretePowerLaw(double alpha, std::int64_t x_min, std::size_t table_size)
    : alpha_(alpha), x_min_(x_min) {
  if (!(alpha > 1.0)) throw ParameterError("power-law exponent must exceed 1");
  if (x_min < 1) throw ParameterError("x_min must be at least 1");
  if (table_size == 0) throw ParameterError("table size must be positive");
  norm_ = hurwitz_zeta(alpha_, static_cast<double>(x_min_));
  ccdf_.resize(table_size + 1);
  ccdf_[table_size] =
      hurwitz_zeta(alpha_, static_cast<double>(x_min_) + static_cast<double>(table_size)) / norm_;
  for (std::size_t k = table_size; k-- > 0;) {
    const double x = static_cast<double>(x_min_) + static_cast<double>(k);
    ccdf_[k] = ccdf_[k + 1] + std::pow(x, -alpha_) / norm_;
  }
}

double DiscretePowerLaw::ccdf(std::int64_t x) const {
  if (x <= x_min_) return 1.0;
  const auto k = static_cast<std::uint64_t>(x - x_min_);
  if (k < ccdf_.size()) return ccdf_[k];
  return hurwitz_zeta(alpha_, static_cast<double>(x)) / norm_;
}

std::int64_t DiscretePowerLaw::operator()(Rng& rng) const {
  const double u = 1.0 - uniform01(rng);  // (0, 1]
  if (u > ccdf_.back()) {
    const auto it = std::partition_point(ccdf_.begin(), ccdf_.end(),
                                         [u](double c) { return c >= u; });
    const auto k = static_cast<std::int64_t>(it - ccdf_.begin());
    return x_min_ + std::max<std::int64_t>(k - 1, 0);
  }
  // Largest x with P(X >= x) >= u lies beyond the table.
  std::int64_t lo = x_min_ + static_cast<std::int64_t>(ccdf_.size()) - 1;
  std::int64_t hi = lo;
  constexpr std::int64_t kCap = std::int64_t{1} << 62;
  while (ccdf(hi) >= u) {
    if (hi >= kCap / 2) return kCap;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ccdf(mid) >= u ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace rumor
