#include "rctv/trial_input.hpp"

#include <charconv>
#include <set>
#include <string>

#include <json.hpp>

#include "rctv/csv.hpp"
#include "rctv/error.hpp"

namespace rctv {

namespace {

using nlohmann::ordered_json;

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields{
      "id",         "name",       "endpoint",   "scale",     "point",
      "ci_lower",   "ci_upper",   "ci_level",   "mcid_benefit", "mcid_harm",
      "rope_lower", "rope_upper", "ni_margin",  "cer",       "direction",
  };
  return fields;
}

[[noreturn]] void fail_record(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

double require_number(const ordered_json& j, const std::string& key,
                      const std::string& where) {
  if (!j.is_number()) fail_record(where, "field '" + key + "' must be a number");
  return j.get<double>();
}

std::string require_string(const ordered_json& j, const std::string& key,
                           const std::string& where) {
  if (!j.is_string()) fail_record(where, "field '" + key + "' must be a string");
  return j.get<std::string>();
}

TrialInputRecord record_from_object(const ordered_json& obj, std::size_t index) {
  std::string where = "record " + std::to_string(index);
  if (!obj.is_object()) fail_record(where, "expected a JSON object");
  if (obj.contains("id") && obj["id"].is_string())
    where += " (id '" + obj["id"].get<std::string>() + "')";

  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known_fields().count(key)) fail_record(where, "unknown field '" + key + "'");
  }
  for (const char* req : {"id", "scale", "point", "ci_lower", "ci_upper", "mcid_benefit"})
    if (!obj.contains(req)) fail_record(where, std::string("missing field '") + req + "'");

  TrialInputRecord r;
  r.index = index;
  r.id = require_string(obj["id"], "id", where);
  if (r.id.empty()) fail_record(where, "field 'id' must be non-empty");
  if (obj.contains("name")) r.name = require_string(obj["name"], "name", where);
  if (obj.contains("endpoint")) r.endpoint = require_string(obj["endpoint"], "endpoint", where);

  std::string scale_text = require_string(obj["scale"], "scale", where);
  auto scale = parse_scale(scale_text);
  if (!scale) fail_record(where, "unknown scale '" + scale_text + "'");
  r.scale = *scale;

  r.point = require_number(obj["point"], "point", where);
  r.ci_lower = require_number(obj["ci_lower"], "ci_lower", where);
  r.ci_upper = require_number(obj["ci_upper"], "ci_upper", where);
  if (obj.contains("ci_level")) r.ci_level = require_number(obj["ci_level"], "ci_level", where);
  r.mcid_benefit = require_number(obj["mcid_benefit"], "mcid_benefit", where);
  if (obj.contains("mcid_harm")) r.mcid_harm = require_number(obj["mcid_harm"], "mcid_harm", where);
  if (obj.contains("rope_lower"))
    r.rope_lower = require_number(obj["rope_lower"], "rope_lower", where);
  if (obj.contains("rope_upper"))
    r.rope_upper = require_number(obj["rope_upper"], "rope_upper", where);
  if (obj.contains("ni_margin")) r.ni_margin = require_number(obj["ni_margin"], "ni_margin", where);
  if (obj.contains("cer")) r.cer = require_number(obj["cer"], "cer", where);
  if (obj.contains("direction")) {
    std::string d = require_string(obj["direction"], "direction", where);
    auto dir = parse_direction(d);
    if (!dir) fail_record(where, "unknown direction '" + d + "' (use 'lower' or 'higher')");
    r.direction = *dir;
  }
  return r;
}

double csv_number(const std::string& cell, const std::string& column, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ValidationError("csv line " + std::to_string(line) + ": column '" + column +
                          "': expected a number, got '" + cell + "'");
  return out;
}

}  // namespace

std::vector<TrialInputRecord> parse_trials_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("json: ") + e.what());
  }
  if (!doc.is_array()) throw ValidationError("json: top-level value must be an array of records");
  std::vector<TrialInputRecord> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(record_from_object(doc[i], i));
  return out;
}

std::vector<TrialInputRecord> parse_trials_csv(const std::string& text) {
  CsvTable table = parse_csv(text);
  for (const auto& col : table.header)
    if (!known_fields().count(col))
      throw ValidationError("csv header: unknown column '" + col + "'");
  auto column = [&](const char* name) -> int {
    for (std::size_t i = 0; i < table.header.size(); ++i)
      if (table.header[i] == name) return static_cast<int>(i);
    return -1;
  };
  for (const char* req : {"id", "scale", "point", "ci_lower", "ci_upper", "mcid_benefit"})
    if (column(req) < 0)
      throw ValidationError(std::string("csv header: missing required column '") + req + "'");

  std::vector<TrialInputRecord> out;
  out.reserve(table.rows.size());
  for (std::size_t ri = 0; ri < table.rows.size(); ++ri) {
    const auto& row = table.rows[ri];
    std::size_t line = table.row_lines[ri];
    auto cell = [&](const char* name) -> const std::string* {
      int c = column(name);
      if (c < 0 || row[static_cast<std::size_t>(c)].empty()) return nullptr;
      return &row[static_cast<std::size_t>(c)];
    };
    auto require_cell = [&](const char* name) -> const std::string& {
      const std::string* c = cell(name);
      if (!c)
        throw ValidationError("csv line " + std::to_string(line) + ": column '" +
                              name + "' must be non-empty");
      return *c;
    };

    TrialInputRecord r;
    r.index = ri;
    r.source_line = line;
    r.id = require_cell("id");
    if (const auto* c = cell("name")) r.name = *c;
    if (const auto* c = cell("endpoint")) r.endpoint = *c;
    const std::string& scale_text = require_cell("scale");
    auto scale = parse_scale(scale_text);
    if (!scale)
      throw ValidationError("csv line " + std::to_string(line) + ": unknown scale '" +
                            scale_text + "'");
    r.scale = *scale;
    r.point = csv_number(require_cell("point"), "point", line);
    r.ci_lower = csv_number(require_cell("ci_lower"), "ci_lower", line);
    r.ci_upper = csv_number(require_cell("ci_upper"), "ci_upper", line);
    if (const auto* c = cell("ci_level")) r.ci_level = csv_number(*c, "ci_level", line);
    r.mcid_benefit = csv_number(require_cell("mcid_benefit"), "mcid_benefit", line);
    if (const auto* c = cell("mcid_harm")) r.mcid_harm = csv_number(*c, "mcid_harm", line);
    if (const auto* c = cell("rope_lower")) r.rope_lower = csv_number(*c, "rope_lower", line);
    if (const auto* c = cell("rope_upper")) r.rope_upper = csv_number(*c, "rope_upper", line);
    if (const auto* c = cell("ni_margin")) r.ni_margin = csv_number(*c, "ni_margin", line);
    if (const auto* c = cell("cer")) r.cer = csv_number(*c, "cer", line);
    if (const auto* c = cell("direction")) {
      auto dir = parse_direction(*c);
      if (!dir)
        throw ValidationError("csv line " + std::to_string(line) + ": unknown direction '" +
                              *c + "' (use 'lower' or 'higher')");
      r.direction = *dir;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrialInputRecord> parse_trials(const std::string& text) {
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    if (ch == '[') return parse_trials_json(text);
    break;
  }
  return parse_trials_csv(text);
}

}  // namespace rctv
