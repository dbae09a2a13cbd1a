#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smokecast/common.hpp"

namespace smokecast {

SMOKECAST_DEFINE_ERROR(FileError);
SMOKECAST_DEFINE_ERROR(ParseError);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> find_column(const std::string& name) const;
  // Throws ParseError naming the missing column.
  std::size_t column(const std::string& name) const;
};

// Header row required; fields trimmed of surrounding whitespace. Quoting is
// not supported (none of the documented schemas need it).
CsvTable read_delimited(const std::string& path, char delim = ',');

void write_delimited(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows, char delim = ',');

// Parses a double; returns nullopt on any trailing garbage.
std::optional<double> parse_double(const std::string& field);
std::optional<long> parse_long(const std::string& field);

// Shortest decimal text that round-trips the double exactly.
std::string format_double(double v);

}  // namespace smokecast
