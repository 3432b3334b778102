#include "membrane/csv.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace membrane::csv {

std::string format_double(double value) {
  // Integral values (grid temperatures, counts) read best without an
  // exponent; %g would render 100 as 1e+02 at low precision.
  if (std::abs(value) < 1e15 && value == std::nearbyint(value)) {
    char plain[32];
    std::snprintf(plain, sizeof(plain), "%lld",
                  static_cast<long long>(value));
    return plain;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  // %.17g always round-trips but often carries trailing noise digits; retry
  // with fewer digits and keep the shortest string that parses back exactly.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(shorter, "%lf", &parsed);
    if (parsed == value) return shorter;
  }
  return buf;
}

void write_header(std::ostream& out, const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i != 0) out << ',';
    out << columns[i];
  }
  out << '\n';
}

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace membrane::csv
