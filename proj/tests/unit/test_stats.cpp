#include <doctest.h>

#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "rumor/csv.hpp"
#include "rumor/distributions.hpp"
#include "rumor/error.hpp"
#include "rumor/first_sharers.hpp"
#include "rumor/hypothesis.hpp"
#include "rumor/power_law.hpp"
#include "rumor/summary.hpp"

using namespace rumor;

namespace {

std::vector<double> power_law_sample(const oracle::PowerLawTable& table, std::size_t n,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = static_cast<double>(table.draw(rng));
  return out;
}

std::vector<double> normals(std::size_t n, std::uint64_t seed, double shift = 0.0) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = standard_normal(rng) + shift;
  return out;
}

}  // namespace

TEST_CASE("summary statistics") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  const auto s = summary_stats(v);
  CHECK(s.min == 1);
  CHECK(s.q1 == 2);
  CHECK(s.median == 3);
  CHECK(s.mean == 3);
  CHECK(s.q3 == 4);
  CHECK(s.max == 5);
  // Type-7 interpolation between order statistics.
  const std::vector<double> w{4, 1, 3, 2};
  CHECK(summary_stats(w).q1 == doctest::Approx(1.75));
  CHECK(summary_stats(w).median == doctest::Approx(2.5));
  CHECK_THROWS_AS(summary_stats(std::vector<double>{}), ParameterError);
  CHECK(sample_sd(v) == doctest::Approx(std::sqrt(2.5)));
  CHECK(sample_sd(std::vector<double>{7}) == 0.0);
}

TEST_CASE("summary ordering holds on arbitrary samples") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + rng() % 30);
    for (double& x : v) x = static_cast<double>(rng() % 7) * (rng() % 2 ? 1e-3 : 1e3);
    const auto s = summary_stats(v);
    CHECK(s.min <= s.q1);
    CHECK(s.q1 <= s.median);
    CHECK(s.median <= s.q3);
    CHECK(s.q3 <= s.max);
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);
  }
}

TEST_CASE("empirical CDF and CCDF boundaries") {
  const std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(ccdf_at(v, 0.0) == 1.0);
  CHECK(cdf_at(v, 9.0) == 1.0);
  CHECK(cdf_at(v, 0.5) == 0.0);
  const auto cdf = empirical_cdf(v);
  const auto ccdf = empirical_ccdf(v);
  CHECK(cdf.front().x == 1.0);
  CHECK(cdf.front().y == doctest::Approx(0.25));
  CHECK(cdf.back().y == 1.0);
  CHECK(ccdf.front().y == 1.0);
  CHECK(ccdf.back().x == 9.0);
  CHECK(ccdf.back().y == doctest::Approx(0.125));
  CHECK(cdf.size() == 7);
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].y > cdf[i - 1].y);
    CHECK(ccdf[i].y < ccdf[i - 1].y);
  }
}

TEST_CASE("density estimates integrate to one") {
  const auto v = normals(5000, 1, 10.0);
  double area = 0.0;
  const auto pdf = empirical_pdf(v, {Binning::Kind::kLinear, 25});
  const double width = (*std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end())) / 25;
  for (const auto& p : pdf) area += p.y * width;
  CHECK(area == doctest::Approx(1.0));
  const std::vector<double> point{2, 2, 2};
  const auto mass = empirical_pdf(point, {Binning::Kind::kLinear, 10});
  REQUIRE(mass.size() == 1);
  CHECK(mass[0].x == 2.0);
  CHECK(mass[0].y == 1.0);
  CHECK_THROWS_AS(empirical_pdf(std::vector<double>{0, 1}, {Binning::Kind::kLog, 5}), ParameterError);
}

TEST_CASE("binned mean") {
  const std::vector<double> x{1, 2, 20, 30, 100};
  const std::vector<double> y{2, 4, 6, 8, 10};
  const auto curve = binned_mean(x, y, {Binning::Kind::kLog, 2});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].y == doctest::Approx(3.0));
  CHECK(curve[1].y == doctest::Approx(8.0));
}

TEST_CASE("KS statistic basics") {
  const auto s = normals(300, 2);
  CHECK(ks_statistic(s, s) == 0.0);
  CHECK_FALSE(ks_two_sample(s, s).reject);

  std::vector<double> low;
  std::vector<double> high;
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    low.push_back(uniform01(rng));
    high.push_back(2.0 + uniform01(rng));
  }
  const auto r = ks_two_sample(low, high, 0.001);
  CHECK(r.statistic == 1.0);
  CHECK(r.reject);
  CHECK(r.critical == doctest::Approx(kolmogorov_critical(0.001) * std::sqrt(100.0 / 2500.0)));
  CHECK_THROWS_AS(ks_statistic(low, std::vector<double>{}), ParameterError);
  CHECK_THROWS_AS(ks_two_sample(low, high, 1.0), ParameterError);
}

TEST_CASE("KS statistic is invariant under monotone transforms") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = normals(20 + rng() % 50, rng());
    auto b = normals(20 + rng() % 50, rng(), 0.3);
    // Coarse rounding creates ties shared between samples.
    for (double& x : a) x = std::round(x * 4.0) / 4.0;
    for (double& x : b) x = std::round(x * 4.0) / 4.0;
    const double d = ks_statistic(a, b);
    for (double& x : a) x = std::exp(3.0 * x);
    for (double& x : b) x = std::exp(3.0 * x);
    CHECK(ks_statistic(a, b) == d);
    CHECK(ks_statistic(b, a) == d);
  }
}

TEST_CASE("KS statistic agrees with a brute-force supremum") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(1 + rng() % 15);
    std::vector<double> b(1 + rng() % 15);
    for (double& x : a) x = static_cast<double>(rng() % 6);
    for (double& x : b) x = static_cast<double>(rng() % 6);
    double d = 0.0;
    for (double x : a) d = std::max(d, std::abs(cdf_at(a, x) - cdf_at(b, x)));
    for (double x : b) d = std::max(d, std::abs(cdf_at(a, x) - cdf_at(b, x)));
    CHECK(ks_statistic(a, b) == doctest::Approx(d).epsilon(1e-14));
  }
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_critical(0.05) == doctest::Approx(1.358).epsilon(1e-3));
  CHECK(kolmogorov_critical(0.01) == doctest::Approx(1.628).epsilon(1e-3));
  for (double x : {0.3, 0.6, 0.9, 1.0, 1.2, 1.6, 2.5})
    CHECK(kolmogorov_cdf(x) == doctest::Approx(oracle::kolmogorov_theta(x)).epsilon(1e-12));
  CHECK(kolmogorov_cdf(0.0) == 0.0);
  CHECK(kolmogorov_cdf(1.0 - 1e-12) == doctest::Approx(kolmogorov_cdf(1.0)).epsilon(1e-10));
}

TEST_CASE("chi-square survival and Wald test") {
  CHECK(chi_square1_survival(0.0) == 1.0);
  for (double w : {0.1, 1.0, 3.8415, 6.6349, 12.0})
    CHECK(chi_square1_survival(w) == doctest::Approx(oracle::chi_square1_survival(w)).epsilon(1e-9));
  CHECK(chi_square1_survival(3.8415) == doctest::Approx(0.05).epsilon(1e-3));

  PowerLawFit a{2.3, 0.0004, 1, 1000, 0.0};
  const auto same = wald_test(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK_FALSE(same.reject);

  PowerLawFit b{2.34, 0.01, 1, 10, 0.0};
  const auto ab = wald_test(a, b);
  CHECK(ab.statistic == doctest::Approx(0.04 * 0.04 / 0.0004));
  CHECK(ab.reject);
  // Only the first argument's variance is used.
  CHECK(wald_test(b, a).statistic == doctest::Approx(0.04 * 0.04 / 0.01));
  CHECK_FALSE(wald_test(b, a).reject);

  a.variance = 0.0;
  CHECK_THROWS_AS(wald_test(a, b), DegenerateSampleError);
}

TEST_CASE("Hurwitz zeta") {
  const double pi = std::numbers::pi;
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
  CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-13));
  CHECK(hurwitz_zeta(2.0, 0.5) == doctest::Approx(pi * pi / 2.0).epsilon(1e-13));
  for (double s : {1.3, 2.21, 3.0})
    for (double q : {1.0, 2.5, 40.0})
      CHECK(hurwitz_zeta(s, q) - hurwitz_zeta(s, q + 1.0) == doctest::Approx(std::pow(q, -s)).epsilon(1e-10));
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), ParameterError);
}

TEST_CASE("power-law fit recovers the exponent") {
  const oracle::PowerLawTable table(2.5);
  const auto sample = power_law_sample(table, 100'000, 1);
  const auto fit = fit_power_law(sample);
  CHECK(fit.alpha >= 2.45);
  CHECK(fit.alpha <= 2.55);
  CHECK(fit.n_tail == 100'000);
  CHECK(fit.variance > 0.0);

  const oracle::PowerLawTable science(2.21);
  const auto fit_science = fit_power_law(power_law_sample(science, 100'000, 2));
  CHECK(fit_science.alpha == doctest::Approx(2.21).epsilon(0.05 / 2.21));

  const auto selected = fit_power_law_select_xmin(sample);
  CHECK(selected.alpha == doctest::Approx(2.5).epsilon(0.1 / 2.5));
}

TEST_CASE("power-law variance matches the spread across seeds") {
  const oracle::PowerLawTable table(2.4);
  std::vector<double> alphas;
  double predicted = 0.0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto fit = fit_power_law(power_law_sample(table, 2000, 1000 + seed));
    alphas.push_back(fit.alpha);
    predicted += fit.variance / 300.0;
  }
  const double sd = sample_sd(alphas);
  CHECK(sd * sd == doctest::Approx(predicted).epsilon(0.2));
}

TEST_CASE("power-law degenerate samples") {
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{5, 5, 5}), DegenerateSampleError);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{5, 5, 5}, 5), DegenerateSampleError);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2, 30}, 10), DegenerateSampleError);
  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1.5, 2, 3}), ParameterError);
}

TEST_CASE("discrete power-law sampler") {
  const DiscretePowerLaw law(2.3, 2);
  const oracle::PowerLawTable table(2.3);
  CHECK(law.ccdf(2) == 1.0);
  const double z2 = table.normaliser() - 1.0;  // drops the x = 1 term
  for (std::int64_t x : {3, 10, 1000, 100000}) {
    double head = 0.0;
    for (std::int64_t k = 2; k < x; ++k) head += std::pow(static_cast<double>(k), -2.3);
    CHECK(law.ccdf(x) == doctest::Approx(1.0 - head / z2).epsilon(1e-6));
  }
  Rng rng(12);
  std::vector<double> draws(200'000);
  for (double& d : draws) d = static_cast<double>(law(rng));
  CHECK(*std::min_element(draws.begin(), draws.end()) == 2.0);
  for (std::int64_t x : {3, 5, 20})
    CHECK(ccdf_at(draws, static_cast<double>(x)) == doctest::Approx(law.ccdf(x)).epsilon(0.02));
  CHECK(fit_power_law(draws, 2).alpha == doctest::Approx(2.3).epsilon(0.02));
}

TEST_CASE("distribution sampling and parameters") {
  Rng rng(1);
  const auto five = std::make_shared<const std::vector<double>>(std::vector<double>{5, 5, 5});
  for (int i = 0; i < 100; ++i) CHECK(draw(Empirical{five}, rng) == 5.0);
  CHECK_THROWS_AS(validate(InverseGaussian{-1, 2}), ParameterError);
  CHECK_THROWS_AS(validate(LogNormal{0, 0}), ParameterError);
  CHECK_THROWS_AS(validate(Uniform{2, 1}), ParameterError);
  CHECK_THROWS_AS(validate(Empirical{}), ParameterError);
  CHECK(mean(InverseGaussian{18.73, 9.63}) == 18.73);
  CHECK(mean(LogNormal{1.0, 0.5}) == doctest::Approx(std::exp(1.125)));

  double total = 0.0;
  for (int i = 0; i < 1'000'000; ++i) total += draw(InverseGaussian{18.73, 9.63}, rng);
  CHECK(total / 1e6 == doctest::Approx(18.73).epsilon(0.01));

  // Closed-form CDF against quadrature of the density.
  for (double x : {0.5, 5.0, 18.73, 60.0}) {
    const double q = oracle::gauss_legendre([](double t) { return oracle::ig_density(18.73, 9.63, t); }, 0.0, x);
    CHECK(inverse_gaussian_cdf({18.73, 9.63}, x) == doctest::Approx(q).epsilon(1e-8));
  }
}

TEST_CASE("distribution JSON") {
  const FittedDistribution ig = InverseGaussian{18.73, 9.63};
  const auto back = distribution_from_json(to_json(ig));
  REQUIRE(std::holds_alternative<InverseGaussian>(back));
  CHECK(std::get<InverseGaussian>(back).shape == 9.63);
  const auto poi = distribution_from_json(nlohmann::json::parse(R"({"family":"Poi","rate":3})"));
  CHECK(std::get<Poisson>(poi).rate == 3.0);
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"family":"cauchy"})")), ParameterError);
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"family":"poisson","rate":-2})")),
                  ParameterError);
}

TEST_CASE("first-sharer fits") {
  std::vector<double> v{0, 1, 2, 2, 3, 5, 8, 13, 40, 0};
  const auto fits = fit_first_sharer_families(v);
  CHECK(fits.excluded_zeros == 2);
  CHECK(fits.poisson.rate == doctest::Approx(sample_mean(v)));
  CHECK(fits.uniform.lower == 0.0);
  CHECK(fits.uniform.upper == 40.0);
  REQUIRE(fits.inverse_gaussian);
  const std::vector<double> pos{1, 2, 2, 3, 5, 8, 13, 40};
  const double m = sample_mean(pos);
  double inv = 0.0;
  for (double x : pos) inv += 1.0 / x - 1.0 / m;
  CHECK(fits.inverse_gaussian->mean == doctest::Approx(m));
  CHECK(fits.inverse_gaussian->shape == doctest::Approx(8.0 / inv));
  REQUIRE(fits.log_normal);
  double lm = 0.0;
  for (double x : pos) lm += std::log(x) / 8.0;
  CHECK(fits.log_normal->log_mean == doctest::Approx(lm));

  const std::vector<double> constant{4, 4, 4, 4};
  const auto flat = fit_first_sharer_families(constant);
  CHECK(flat.uniform.lower == 4.0);
  CHECK(flat.uniform.upper == 4.0);
  CHECK_FALSE(flat.inverse_gaussian.has_value());
  CHECK_FALSE(flat.log_normal.has_value());

  CHECK_THROWS_AS(fit_first_sharer_families(std::vector<double>{0, 0, 3}), ParameterError);
  CHECK_THROWS_AS(fit_first_sharer_families(std::vector<double>{-1, 2, 3}), ParameterError);
}

TEST_CASE("Poisson fit reproduces the sample mean") {
  std::vector<double> v(100, 39.0);
  for (int i = 0; i < 24; ++i) v[i] = 40.0;
  CHECK(fit_first_sharer_families(v).poisson.rate == doctest::Approx(39.24));
}

TEST_CASE("first-sharer table CSV") {
  std::vector<double> v{1, 5, 10, 27, 3033, 2, 7};
  const auto report = fit_first_sharers(v, 9);
  std::ostringstream out;
  write_table_csv(out, report.table);
  std::istringstream in(out.str());
  const auto table = csv::read(in);
  CHECK(table.header == std::vector<std::string>{"statistic", "data", "IG", "LN", "Poi"});
  REQUIRE(table.rows.size() == 6);
  CHECK(table.rows[0][0] == "Min");
  CHECK(table.rows[1][0] == "1st Qu.");
  CHECK(table.rows[4][0] == "3rd Qu.");
  CHECK(csv::parse_double(table.rows[0][1]) == 1.0);
  CHECK(csv::parse_double(table.rows[5][1]) == 3033.0);
  CHECK(csv::parse_double(table.rows[2][1]) == 7.0);

  const auto flat = fit_first_sharers(std::vector<double>{4, 4, 4}, 1);
  std::ostringstream out2;
  write_table_csv(out2, flat.table);
  CHECK(out2.str().find("Min,4,NA,NA,4") != std::string::npos);
}

TEST_CASE("csv helpers") {
  CHECK(csv::format(0.1) == "0.1");
  CHECK(csv::format(std::optional<double>{}) == "NA");
  CHECK(csv::parse_double(csv::format(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS_AS(csv::parse_double("abc"), ParameterError);
  std::istringstream headerless("3\n4\n5\n");
  CHECK(csv::read_column(headerless) == std::vector<double>{3, 4, 5});
  std::istringstream named("a,b\n1,2\n3,4\n");
  CHECK(csv::read_column(named, "b") == std::vector<double>{2, 4});
}

TEST_CASE("Wald test calibration under the null") {
  const oracle::PowerLawTable table(2.4);
  // Against an exponent known to much higher precision, the statistic is
  // chi-square(1) and the nominal level holds.
  const auto reference = fit_power_law(power_law_sample(table, 2'000'000, 1));
  int against_reference = 0;
  int between_fits = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const auto a = fit_power_law(power_law_sample(table, 1000, 10 + 2 * trial));
    const auto b = fit_power_law(power_law_sample(table, 1000, 11 + 2 * trial));
    against_reference += wald_test(a, reference).reject;
    between_fits += wald_test(a, b).reject;
  }
  CHECK(against_reference / 1000.0 == doctest::Approx(0.05).epsilon(0.4));
  // Two equally noisy fits double the variance of the difference, so the
  // statistic is 2 chi-square(1) and rejects about 16.6% of the time.
  CHECK(between_fits / 1000.0 == doctest::Approx(oracle::chi_square1_survival(3.8415 / 2.0)).epsilon(0.2));
}
