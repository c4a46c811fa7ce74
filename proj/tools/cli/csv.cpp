#include "csv.hpp"

#include <array>
#include <charconv>

namespace dcstring::cli {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

namespace {

struct CellWriter {
  std::ostream& out;
  void operator()(double v) const { out << format_double(v); }
  void operator()(long long v) const {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), res.ptr - buf.data());
  }
  void operator()(const std::string& s) const { out << s; }
};

}  // namespace

void emit_csv(const CsvTable& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw IoError("csv: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(CellWriter{out}, row[i]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("csv: write failed");
}

}  // namespace dcstring::cli
