#include "rctv/csv.hpp"

#include <string>

#include "rctv/error.hpp"

namespace rctv {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ValidationError("csv line " + std::to_string(line) + ": " + what);
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t row_start_line = 1;
  bool any_field_in_row = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
    field_started = false;
    any_field_in_row = true;
  };
  auto end_row = [&] {
    end_field();
    if (table.header.empty()) {
      table.header = std::move(row);
      if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty()))
        fail(row_start_line, "empty header row");
    } else {
      if (row.size() != table.header.size())
        fail(row_start_line, "expected " + std::to_string(table.header.size()) +
                                 " fields, got " + std::to_string(row.size()));
      table.rows.push_back(std::move(row));
      table.row_lines.push_back(row_start_line);
    }
    row.clear();
    any_field_in_row = false;
    row_start_line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started)
          fail(line, "quote inside an unquoted field");
        in_quotes = true;
        field_was_quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;  // consumed with \n
        ++line;
        end_row();
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        if (field_was_quoted && !in_quotes)
          fail(line, "content after closing quote");
        field_started = true;
        field.push_back(ch);
        break;
    }
  }
  if (in_quotes) fail(row_start_line, "unterminated quoted field");
  // Final row without a trailing newline; a trailing newline leaves nothing.
  if (field_started || field_was_quoted || any_field_in_row) end_row();
  if (table.header.empty()) throw ValidationError("csv: input is empty");
  return table;
}

}  // namespace rctv
