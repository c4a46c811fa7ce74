#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "dcstring/error.hpp"

namespace dcstring::cli {

class IoError : public Error {
 public:
  using Error::Error;
};

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

/// Shortest round-trip form limited to 9 significant digits, independent of the locale.
std::string format_double(double v);

/// Header line and one record per row, comma separated, LF terminated.
/// Throws IoError if the stream fails.
void emit_csv(const CsvTable& table, std::ostream& out);

}  // namespace dcstring::cli
