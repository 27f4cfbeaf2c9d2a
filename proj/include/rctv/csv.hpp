#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 CSV reader: quoted fields, doubled-quote escapes, CRLF or
// LF line endings. Malformed quoting is an error, not a guess.

namespace rctv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based source line each data row started on, aligned with `rows`;
  // kept so later validation errors can point at the offending line.
  std::vector<std::size_t> row_lines;
};

// Parses the whole text. First row is the header. Every data row must have
// exactly as many fields as the header. Throws ValidationError with a line
// number on malformed input.
CsvTable parse_csv(std::string_view text);

}  // namespace rctv
