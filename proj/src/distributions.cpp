#include "rumor/distributions.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "rumor/error.hpp"

namespace rumor {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

// Michael, Schucany & Haas transformation method.
double draw_inverse_gaussian(const InverseGaussian& ig, Rng& rng) {
  const double mu = ig.mean;
  const double lambda = ig.shape;
  const double nu = standard_normal(rng);
  const double y = nu * nu;
  const double x = mu + mu * mu * y / (2.0 * lambda) -
                   mu / (2.0 * lambda) *
                       std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
  return uniform01(rng) <= mu / (mu + x) ? x : mu * mu / x;
}

}  // namespace

std::string family_name(const FittedDistribution& dist) {
  return std::visit(Overloaded{
                        [](const InverseGaussian&) { return "IG"; },
                        [](const LogNormal&) { return "LN"; },
                        [](const Poisson&) { return "Poi"; },
                        [](const Uniform&) { return "Unif"; },
                        [](const Empirical&) { return "Empirical"; },
                    },
                    dist);
}

void validate(const FittedDistribution& dist) {
  std::visit(
      Overloaded{
          [](const InverseGaussian& d) {
            if (!finite_positive(d.mean) || !finite_positive(d.shape))
              throw ParameterError("inverse Gaussian needs positive mean and shape");
          },
          [](const LogNormal& d) {
            if (!std::isfinite(d.log_mean) || !finite_positive(d.log_sd))
              throw ParameterError("log-normal needs finite log-mean and positive log-sd");
          },
          [](const Poisson& d) {
            if (!finite_positive(d.rate))
              throw ParameterError("Poisson rate must be positive");
          },
          [](const Uniform& d) {
            if (!std::isfinite(d.lower) || !std::isfinite(d.upper) ||
                d.lower > d.upper || d.lower < 0.0)
              throw ParameterError("uniform bounds must satisfy 0 <= lower <= upper");
          },
          [](const Empirical& d) {
            if (!d.sample || d.sample->empty())
              throw ParameterError("empirical distribution needs a non-empty sample");
          },
      },
      dist);
}

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double draw(const FittedDistribution& dist, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const InverseGaussian& d) { return draw_inverse_gaussian(d, rng); },
          [&](const LogNormal& d) {
            return std::exp(d.log_mean + d.log_sd * standard_normal(rng));
          },
          [&](const Poisson& d) {
            std::poisson_distribution<long long> pois(d.rate);
            return static_cast<double>(pois(rng));
          },
          [&](const Uniform& d) {
            return d.lower + (d.upper - d.lower) * uniform01(rng);
          },
          [&](const Empirical& d) {
            return (*d.sample)[uniform_index(rng, d.sample->size())];
          },
      },
      dist);
}

double mean(const FittedDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const InverseGaussian& d) { return d.mean; },
          [](const LogNormal& d) {
            return std::exp(d.log_mean + 0.5 * d.log_sd * d.log_sd);
          },
          [](const Poisson& d) { return d.rate; },
          [](const Uniform& d) { return 0.5 * (d.lower + d.upper); },
          [](const Empirical& d) {
            return std::accumulate(d.sample->begin(), d.sample->end(), 0.0) /
                   static_cast<double>(d.sample->size());
          },
      },
      dist);
}

double inverse_gaussian_cdf(const InverseGaussian& ig, double x) {
  if (x <= 0.0) return 0.0;
  const double a = std::sqrt(ig.shape / x);
  const double left = standard_normal_cdf(a * (x / ig.mean - 1.0));
  // exp(2 lambda / mu) * Phi(-b) is evaluated in log space; it overflows
  // separately for large shape / mean ratios.
  const double b = a * (x / ig.mean + 1.0);
  const double tail = 0.5 * std::erfc(b / std::numbers::sqrt2);
  const double right =
      tail > 0.0 ? std::exp(2.0 * ig.shape / ig.mean + std::log(tail)) : 0.0;
  return left + right;
}

nlohmann::json to_json(const FittedDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const InverseGaussian& d) -> nlohmann::json {
            return {{"family", "inverse_gaussian"}, {"mean", d.mean}, {"shape", d.shape}};
          },
          [](const LogNormal& d) -> nlohmann::json {
            return {{"family", "log_normal"}, {"log_mean", d.log_mean}, {"log_sd", d.log_sd}};
          },
          [](const Poisson& d) -> nlohmann::json {
            return {{"family", "poisson"}, {"rate", d.rate}};
          },
          [](const Uniform& d) -> nlohmann::json {
            return {{"family", "uniform"}, {"lower", d.lower}, {"upper", d.upper}};
          },
          [](const Empirical& d) -> nlohmann::json {
            return {{"family", "empirical"}, {"sample", *d.sample}};
          },
      },
      dist);
}

FittedDistribution distribution_from_json(const nlohmann::json& doc) {
  FittedDistribution dist;
  try {
    const auto family = doc.at("family").get<std::string>();
    if (family == "inverse_gaussian" || family == "IG") {
      dist = InverseGaussian{doc.at("mean").get<double>(), doc.at("shape").get<double>()};
    } else if (family == "log_normal" || family == "LN") {
      dist = LogNormal{doc.at("log_mean").get<double>(), doc.at("log_sd").get<double>()};
    } else if (family == "poisson" || family == "Poi") {
      dist = Poisson{doc.at("rate").get<double>()};
    } else if (family == "uniform") {
      dist = Uniform{doc.at("lower").get<double>(), doc.at("upper").get<double>()};
    } else if (family == "empirical") {
      dist = Empirical{std::make_shared<const std::vector<double>>(
          doc.at("sample").get<std::vector<double>>())};
    } else {
      throw ParameterError("unknown distribution family '" + family + "'");
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed distribution: ") + ex.what());
  }
  validate(dist);
  return dist;
}

}  // namespace rumor
