#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rumor/error.hpp"
#include "rumor/signed_graph.hpp"

namespace rumor {

class DensityError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

struct DegreeMass {
  std::size_t degree = 0;
  double probability = 0.0;
};
using DegreeDistribution = std::vector<DegreeMass>;

DegreeDistribution degree_distribution(const SignedGraph& g);

struct BranchingInputs {
  std::size_t z = 8;       // neighbourhood dimension
  double delta = 0.015;    // sharing threshold
  double q = 0.0;          // chance a neighbour has a different polarization
  double mean_first_sharers = 1.0;
  std::optional<DegreeDistribution> degrees;
};

// How the per-neighbour share probability is averaged over fitness.
enum class ShareAverage {
  kTwoDelta,       // p = 2 delta, ignoring the window clipped at 0 and 1
  kBoundaryExact,  // p = 2 delta - delta^2, exact mean for uniform theta
};

// Uniform opinions: min(1, theta + delta) - max(0, theta - delta).
double share_probability(double theta, double delta);

// Opinion density f on [0, 1]: f(theta) * integral of f over the clipped
// window. Throws DensityError unless f integrates to 1 within 1e-6.
double share_probability(double theta, double delta, const std::function<double(double)>& density);

double mean_share_probability(double delta, ShareAverage average);

// mu = z (1 - q) p. With a degree distribution present, the heterogeneous
// form (1 - q) p <z^2>/<z> is used instead.
double branching_ratio(const BranchingInputs& inputs, ShareAverage average = ShareAverage::kTwoDelta);

// S = <m> / (1 - mu); throws SupercriticalError for mu >= 1.
double expected_cascade_size(double mean_first_sharers, double mu);

// (1 - q) p <z^2>/<z> with z = k - 1 taken over the degree distribution.
double heterogeneous_branching(const DegreeDistribution& degrees, double p, double q);

// Adaptive Simpson quadrature.
double integrate(const std::function<double(double)>& f, double a, double b, double tolerance = 1e-12);

}  // namespace rumor
