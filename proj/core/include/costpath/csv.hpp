#pragma once

#include <string>
#include <vector>

namespace costpath {

// Shortest-round-trip style formatting at 17 significant digits so that
// emitted doubles parse back to the identical value.
std::string format_g17(double value);

std::string join_csv(const std::vector<std::string>& fields);

// Splits one CSV line on commas and trims surrounding whitespace. Fields are
// taken verbatim; quoting is not supported (no field in any of the formats
// handled here contains a comma).
std::vector<std::string> split_csv_line(const std::string& line);

// Reads a whole CSV file into rows of trimmed fields. Blank lines are
// skipped. Throws std::runtime_error if the file cannot be opened.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

double parse_double(const std::string& field, const std::string& context);

}  // namespace costpath
