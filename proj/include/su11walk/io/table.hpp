#pragma once

// Tabular results: CSV (RFC 4180 quoting, '.' decimal point, header row) with a
// JSON metadata sidecar, or a single JSON document. Numbers are printed with
// the shortest round-trip representation so output is byte-identical across
// runs and locales.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "su11walk/errors.hpp"

namespace su11walk::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "su11walk";
inline constexpr std::string_view kToolVersion = "1.0.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json metadata = json::object();

  void validate() const {
    if (columns.empty()) throw InvalidArgument("table '" + name + "': no columns");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != columns.size())
        throw InvalidArgument("table '" + name + "': row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " values, expected " +
                              std::to_string(columns.size()));
      for (double v : rows[i])
        if (!std::isfinite(v))
          throw InvalidArgument("table '" + name + "': non-finite value in row " + std::to_string(i));
    }
  }

  std::size_t column_index(std::string_view col) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == col) return i;
    std::string have;
    for (const auto& c : columns) have += (have.empty() ? "" : ", ") + c;
    throw InvalidArgument("table '" + name + "' has no column '" + std::string(col) + "' (columns: " + have + ")");
  }

  std::vector<double> column(std::string_view col) const {
    const std::size_t j = column_index(col);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
  }
};

inline std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string to_csv(const ResultTable& t) {
  t.validate();
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + csv_field(t.columns[j]);
  out += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + format_number(row[j]);
    out += "\r\n";
  }
  return out;
}

/// Splits RFC 4180 text into records of fields.
inline std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
      }
      rec.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw InvalidArgument("csv: unterminated quoted field");
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  return records;
}

inline double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidArgument("csv: not a number: '" + std::string(s) + "'");
  return v;
}

inline ResultTable from_csv(std::string_view text, std::string name = "table") {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw InvalidArgument("csv: missing header row");
  ResultTable t;
  t.name = std::move(name);
  t.columns = records.front();
  for (std::size_t i = 1; i < records.size(); ++i) {
    std::vector<double> row;
    for (const auto& f : records[i]) row.push_back(parse_number(f));
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

inline json to_json(const ResultTable& t) {
  t.validate();
  json j;
  j["name"] = t.name;
  j["metadata"] = t.metadata;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j;
}

inline ResultTable table_from_json(const json& j) {
  ResultTable t;
  try {
    t.name = j.at("name").get<std::string>();
    t.metadata = j.value("metadata", json::object());
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("table json: ") + e.what());
  }
  t.validate();
  return t;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a temporary sibling and rename so readers never see partial files.
inline void write_atomic(const std::filesystem::path& p, std::string_view content) {
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  const std::filesystem::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + p.string());
  }
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " to " + p.string() + ": " + ec.message());
  }
}

enum class TableFormat { csv, json };

inline TableFormat table_format_from_string(std::string_view s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "json") return TableFormat::json;
  throw InvalidArgument("unknown format '" + std::string(s) + "' (expected csv|json)");
}

/// Writes `<dir>/<name>.csv` plus `<name>.meta.json`, or `<dir>/<name>.json`.
/// Returns the primary file path.
inline std::filesystem::path write_table(const ResultTable& t, const std::filesystem::path& dir, TableFormat f) {
  if (f == TableFormat::csv) {
    const auto path = dir / (t.name + ".csv");
    write_atomic(path, to_csv(t));
    write_atomic(dir / (t.name + ".meta.json"), t.metadata.dump(2) + "\n");
    return path;
  }
  const auto path = dir / (t.name + ".json");
  write_atomic(path, to_json(t).dump(2) + "\n");
  return path;
}

/// Reads a table written by write_table (CSV picks up its sidecar when present).
inline ResultTable read_table(const std::filesystem::path& p) {
  const std::string text = read_file(p);
  if (p.extension() == ".json") {
    try {
      return table_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("table json: ") + e.what());
    }
  }
  ResultTable t = from_csv(text, p.stem().string());
  auto meta = p;
  meta.replace_extension(".meta.json");
  if (std::filesystem::exists(meta)) {
    try {
      t.metadata = json::parse(read_file(meta));
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("table metadata: ") + e.what());
    }
  }
  return t;
}

}  // namespace su11walk::io
