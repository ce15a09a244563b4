#include "rumor/branching.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rumor {

namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError(std::string(what) + " must lie in [0,1]");
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tolerance, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tolerance, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tolerance, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tolerance) {
  if (a == b) return 0.0;
  // Seed with a few panels so narrow features are not missed.
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == kPanels ? b : lo + h;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tolerance / kPanels, 40);
  }
  return total;
}

double share_probability(double theta, double delta) {
  check_unit(theta, "fitness");
  check_unit(delta, "sharing threshold");
  return std::min(1.0, theta + delta) - std::max(0.0, theta - delta);
}

double share_probability(double theta, double delta, const std::function<double(double)>& density) {
  check_unit(theta, "fitness");
  check_unit(delta, "sharing threshold");
  const double norm = integrate(density, 0.0, 1.0, 1e-10);
  if (std::abs(norm - 1.0) > 1e-6)
    throw DensityError("opinion density integrates to " + std::to_string(norm) + ", not 1");
  const double lo = std::max(0.0, theta - delta);
  const double hi = std::min(1.0, theta + delta);
  return density(theta) * integrate(density, lo, hi, 1e-12);
}

double mean_share_probability(double delta, ShareAverage average) {
  check_unit(delta, "sharing threshold");
  return average == ShareAverage::kTwoDelta ? 2.0 * delta : 2.0 * delta - delta * delta;
}

double heterogeneous_branching(const DegreeDistribution& degrees, double p, double q) {
  check_unit(p, "share probability");
  check_unit(q, "mixing probability");
  double total = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (const DegreeMass& d : degrees) {
    if (!(d.probability >= 0.0)) throw ParameterError("degree probabilities must be non-negative");
    if (d.degree == 0) {
      total += d.probability;
      continue;
    }
    const auto z = static_cast<double>(d.degree - 1);
    total += d.probability;
    first += d.probability * z;
    second += d.probability * z * z;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ParameterError("degree distribution must sum to 1");
  if (!(first > 0.0)) throw ParameterError("degree distribution has zero mean excess degree");
  return (1.0 - q) * p * second / first;
}

double branching_ratio(const BranchingInputs& inputs, ShareAverage average) {
  check_unit(inputs.q, "mixing probability");
  if (inputs.z == 0) throw ParameterError("neighbourhood dimension must be positive");
  const double p = mean_share_probability(inputs.delta, average);
  if (inputs.degrees) return heterogeneous_branching(*inputs.degrees, p, inputs.q);
  return static_cast<double>(inputs.z) * (1.0 - inputs.q) * p;
}

double expected_cascade_size(double mean_first_sharers, double mu) {
  if (!(mean_first_sharers >= 0.0)) throw ParameterError("mean first sharers must be non-negative");
  if (!(mu >= 0.0)) throw ParameterError("branching ratio must be non-negative");
  if (mu >= 1.0) throw SupercriticalError("branching ratio " + std::to_string(mu) + " >= 1: size diverges");
  return mean_first_sharers / (1.0 - mu);
}

DegreeDistribution degree_distribution(const SignedGraph& g) {
  std::map<std::size_t, std::size_t> counts;
  for (NodeId i = 0; i < g.node_count(); ++i) ++counts[g.degree(i)];
  DegreeDistribution out;
  const auto n = static_cast<double>(g.node_count());
  for (const auto& [k, c] : counts) out.push_back({k, static_cast<double>(c) / n});
  return out;
}

}  // namespace rumor
