#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>

#include "rumor/distributions.hpp"
#include "rumor/summary.hpp"

namespace rumor {

// Maximum-likelihood fits of every candidate first-sharer family.
// Zeros carry no information for the positive families (IG, LN) and are
// dropped from those two fits; `excluded_zeros` reports how many.
struct FirstSharerFits {
  std::optional<InverseGaussian> inverse_gaussian;  // absent when degenerate
  std::optional<LogNormal> log_normal;              // absent when degenerate
  Poisson poisson;
  Uniform uniform;
  Empirical empirical;
  std::size_t excluded_zeros = 0;
};

FirstSharerFits fit_first_sharer_families(std::span<const double> samples);

// Summary of the data next to summaries of equal-size draws from the
// fitted IG, LN and Poisson models.
struct FirstSharerTable {
  SummaryStats data;
  std::optional<SummaryStats> inverse_gaussian;
  std::optional<SummaryStats> log_normal;
  SummaryStats poisson;
};

struct FirstSharerReport {
  FirstSharerFits fits;
  FirstSharerTable table;
};

FirstSharerReport fit_first_sharers(std::span<const double> samples, std::uint64_t seed);

// CSV with header `statistic,data,IG,LN,Poi` and rows Min, 1st Qu., Median,
// Mean, 3rd Qu., Max. Degenerate fits print NA.
void write_table_csv(std::ostream& out, const FirstSharerTable& table);

}  // namespace rumor
