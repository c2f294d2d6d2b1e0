#include "core/csv.hpp"

#include "core/error.hpp"

#include <fstream>
#include <sstream>

namespace heurbench {

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name)
      return static_cast<int>(i);
  return -1;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    bool blank = record.size() == 1 && record[0].empty();
    if (!blank) {
      if (table.header.empty()) {
        table.header = record;
      } else {
        if (record.size() != table.header.size())
          fail(Errc::MalformedRow, "line " + std::to_string(record_line) + ": expected " +
                                       std::to_string(table.header.size()) + " fields, got " +
                                       std::to_string(record.size()));
        table.rows.push_back(record);
        table.row_lines.push_back(record_line);
      }
    }
    record.clear();
    record_line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
    case '"':
      if (field_started && !field.empty())
        fail(Errc::MalformedRow, "line " + std::to_string(line) + ": quote inside unquoted field");
      quoted = true;
      field_started = true;
      break;
    case ',':
      end_field();
      break;
    case '\r':
      if (i + 1 < text.size() && text[i + 1] == '\n')
        break; // consumed by the following '\n'
      [[fallthrough]];
    case '\n':
      ++line;
      end_record();
      break;
    default:
      field += c;
      field_started = true;
      break;
    }
  }
  if (quoted)
    fail(Errc::MalformedRow, "line " + std::to_string(record_line) + ": unterminated quoted field");
  if (field_started || !record.empty())
    end_record();

  if (table.header.empty())
    fail(Errc::MalformedRow, "missing header row");
  return table;
}

CsvTable read_csv_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(Errc::IoFailure, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

} // namespace heurbench
