#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rumor/rng.hpp"

namespace rumor {

// Inverse Gaussian in the (mean, shape) parameterization.
struct InverseGaussian {
  double mean = 1.0;
  double shape = 1.0;
};

// Log-normal; parameters are the mean and sd of log(x).
struct LogNormal {
  double log_mean = 0.0;
  double log_sd = 1.0;
};

struct Poisson {
  double rate = 1.0;
};

// Continuous uniform on [lower, upper].
struct Uniform {
  double lower = 0.0;
  double upper = 1.0;
};

// Resamples an observed sample with replacement.
struct Empirical {
  std::shared_ptr<const std::vector<double>> sample;
};

using FittedDistribution =
    std::variant<InverseGaussian, LogNormal, Poisson, Uniform, Empirical>;

std::string family_name(const FittedDistribution& dist);

// Throws ParameterError when parameters lie outside the family's domain.
void validate(const FittedDistribution& dist);

double draw(const FittedDistribution& dist, Rng& rng);
double mean(const FittedDistribution& dist);

double standard_normal(Rng& rng);
double standard_normal_cdf(double x);

double inverse_gaussian_cdf(const InverseGaussian& ig, double x);

nlohmann::json to_json(const FittedDistribution& dist);
// Accepts {"family": "inverse_gaussian"|"log_normal"|"poisson"|"uniform"|
// "empirical", ...parameters}. Short aliases IG, LN, Poi are accepted.
FittedDistribution distribution_from_json(const nlohmann::json& doc);

}  // namespace rumor
