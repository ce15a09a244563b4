#include "rumor/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <system_error>

#include "rumor/error.hpp"

namespace rumor::csv {

std::string format(double x) {
  if (std::isnan(x)) return "NA";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format(const std::optional<double>& x) {
  return x ? format(*x) : std::string("NA");
}

double parse_double(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r' || field.back() == '\t'))
    field.remove_suffix(1);
  if (field == "NA") return std::nan("");
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParameterError("not a number: '" + std::string(field) + "'");
  return value;
}

std::vector<std::string> split_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ParameterError("missing CSV column '" + std::string(name) + "'");
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = split_line(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

std::vector<double> read_column(std::istream& in, std::string_view name) {
  Table t = read(in);
  std::vector<double> out;
  if (t.header.empty()) return out;
  std::size_t col = 0;
  bool headerless = false;
  if (!name.empty()) {
    col = t.column(name);
  } else {
    try {
      parse_double(t.header[0]);
      headerless = true;
    } catch (const ParameterError&) {
    }
  }
  if (headerless) out.push_back(parse_double(t.header[col]));
  for (const auto& row : t.rows) {
    if (col >= row.size()) throw ParameterError("short CSV row");
    out.push_back(parse_double(row[col]));
  }
  return out;
}

void write_curve(std::ostream& out, const Curve& curve) {
  out << "x,y\n";
  for (const auto& p : curve) out << format(p.x) << ',' << format(p.y) << '\n';
}

}  // namespace rumor::csv
