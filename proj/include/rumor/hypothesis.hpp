#pragma once

#include <span>

#include "rumor/power_law.hpp"

namespace rumor {

struct WaldResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
};

// W = (alpha_1 - alpha_2)^2 / Var(alpha_1), referred to chi-square(1).
// Only the first fit's variance enters the statistic.
WaldResult wald_test(const PowerLawFit& first, const PowerLawFit& second,
                     double alpha = 0.05);

// Survival function of the chi-square distribution with one degree of freedom.
double chi_square1_survival(double w);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;
  bool reject = false;
};

// sup_x |F1(x) - F2(x)| over the pooled sample; ties are stepped together.
double ks_statistic(std::span<const double> first, std::span<const double> second);

// Limiting Kolmogorov distribution K(x) = P(sqrt(n) D_n <= x).
double kolmogorov_cdf(double x);

// c(alpha) solving K(c) = 1 - alpha; c(0.05) is about 1.358.
double kolmogorov_critical(double alpha);

// Rejects when D exceeds c(alpha) sqrt((n1 + n2) / (n1 n2)).
KsResult ks_two_sample(std::span<const double> first, std::span<const double> second,
                       double alpha = 0.05);

}  // namespace rumor
