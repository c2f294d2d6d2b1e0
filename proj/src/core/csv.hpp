#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace heurbench {

/// Parsed CSV content. Quoting follows RFC 4180: fields may be wrapped in
/// double quotes, embedded quotes double up, and quoted fields may contain
/// commas and newlines. CRLF and LF line endings are equivalent.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines; // 1-based source line of each row

  /// Column position by name; -1 when absent.
  int column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text); // throws MalformedRow on bad quoting
CsvTable read_csv_file(const std::string &path); // adds IoFailure

} // namespace heurbench
