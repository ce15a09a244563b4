#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/summary.hpp"

namespace rumor::csv {

// Shortest representation that parses back to the same double.
std::string format(double x);
std::string format(const std::optional<double>& x);  // NA when absent

double parse_double(std::string_view field);

std::vector<std::string> split_line(std::string_view line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column; throws ParameterError if missing.
  std::size_t column(std::string_view name) const;
};

Table read(std::istream& in);

// Reads one numeric column: the named column if given, otherwise the first.
// A file whose first line parses as a number is treated as headerless.
std::vector<double> read_column(std::istream& in, std::string_view name = {});

void write_curve(std::ostream& out, const Curve& curve);

}  // namespace rumor::csv
