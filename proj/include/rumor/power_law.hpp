#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rumor/rng.hpp"

namespace rumor {

// Hurwitz zeta: sum_{k>=0} (k + q)^(-s), for s > 1 and q > 0.
double hurwitz_zeta(double s, double q);

struct PowerLawFit {
  double alpha = 0.0;
  // Asymptotic variance 1 / (n_tail * I(alpha)), with I the exact Fisher
  // information of the discrete power law: d^2/da^2 log zeta(a, x_min).
  double variance = 0.0;
  std::int64_t x_min = 1;
  std::size_t n_tail = 0;
  double log_likelihood = 0.0;
};

// Discrete maximum-likelihood exponent for p(x) = x^-alpha / zeta(alpha, x_min)
// over the samples >= x_min. Throws DegenerateSampleError when fewer than two
// samples reach x_min or all of them equal x_min.
PowerLawFit fit_power_law(std::span<const double> samples, std::int64_t x_min = 1);

// Picks x_min minimising the KS distance between the tail sample and its
// fitted model, scanning distinct sample values that leave >= min_tail points.
PowerLawFit fit_power_law_select_xmin(std::span<const double> samples,
                                      std::size_t min_tail = 10);

// Inverse-CDF sampler for the discrete power law. P(X >= x) is tabulated up
// to x_min + table_size; beyond the table the tail is inverted by bisection
// on the Hurwitz zeta.
class DiscretePowerLaw {
 public:
  DiscretePowerLaw(double alpha, std::int64_t x_min, std::size_t table_size = 1 << 16);

  std::int64_t operator()(Rng& rng) const;
  // P(X >= x).
  double ccdf(std::int64_t x) const;

  double alpha() const { return alpha_; }
  std::int64_t x_min() const { return x_min_; }

 private:
  double alpha_;
  std::int64_t x_min_;
  double norm_;
  std::vector<double> ccdf_;  // ccdf_[k] = P(X >= x_min + k)
};

}  // namespace rumor
