#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace membrane::csv {

// Shortest-width decimal rendering that still round-trips a double exactly
// (printf %.17g); integral values render without an exponent where possible.
std::string format_double(double value);

void write_header(std::ostream& out, const std::vector<std::string>& columns);

void write_row(std::ostream& out, const std::vector<double>& values);

// Mixed rows: every cell is already rendered (strings pass through verbatim).
void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace membrane::csv
