#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nilorb::report {

inline constexpr int kSchemaVersion = 1;

// Rows of JSON objects plus scalar metadata; rendered as json, csv or pretty.
struct Table {
  std::string command;
  nlohmann::json meta = nlohmann::json::object();
  std::vector<nlohmann::json> rows;

  std::vector<std::string> columns() const {
    std::set<std::string> keys;
    for (const auto& r : rows)
      for (auto it = r.begin(); it != r.end(); ++it) keys.insert(it.key());
    return {keys.begin(), keys.end()};
  }
  friend bool operator==(const Table&, const Table&) = default;
};

inline nlohmann::json to_json(const Table& t) {
  return {{"schema_version", kSchemaVersion}, {"command", t.command}, {"meta", t.meta}, {"rows", t.rows}};
}

inline Table from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion) throw std::invalid_argument("report: schema version mismatch");
  Table t;
  t.command = j.at("command").get<std::string>();
  t.meta = j.at("meta");
  for (const auto& r : j.at("rows")) t.rows.push_back(r);
  return t;
}

namespace detail {

inline std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Strings stay raw; everything else is compact JSON.
inline std::string cell(const nlohmann::json& v) { return quote(v.is_string() ? v.get<std::string>() : v.dump()); }

inline std::string type_tag(const nlohmann::json& v) { return v.is_string() ? "string" : "json"; }

inline std::vector<std::string> split_record(std::istream& in, bool& ok) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  char c;
  ok = false;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cur += '"';
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!any) return out;
  out.push_back(std::move(cur));
  ok = true;
  return out;
}

}  // namespace detail

// Layout: "#schema_version,<v>", "#command,<name>", one "#meta,<key>,<json>"
// line per metadata entry, "#types,..." for the columns, the header, rows.
// A cell missing from a row is written empty and read back as missing, except
// in string columns.
inline std::string to_csv(const Table& t) {
  std::ostringstream out;
  out << "#schema_version," << kSchemaVersion << "\n#command," << detail::quote(t.command) << "\n";
  for (auto it = t.meta.begin(); it != t.meta.end(); ++it)
    out << "#meta," << detail::quote(it.key()) << "," << detail::quote(it.value().dump()) << "\n";
  const auto cols = t.columns();
  out << "#types";
  for (const auto& c : cols) {
    std::string tag = "json";
    for (const auto& r : t.rows)
      if (r.contains(c)) {
        tag = detail::type_tag(r.at(c));
        break;
      }
    out << "," << tag;
  }
  out << "\n";
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << detail::quote(cols[i]);
  out << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ",";
      if (r.contains(cols[i])) out << detail::cell(r.at(cols[i]));
    }
    out << "\n";
  }
  return out.str();
}

inline Table from_csv(const std::string& text) {
  std::istringstream in(text);
  Table t;
  std::vector<std::string> types, header;
  bool ok = true;
  while (true) {
    auto rec = detail::split_record(in, ok);
    if (!ok) break;
    if (!rec.empty() && !rec[0].empty() && rec[0][0] == '#') {
      const std::string& tag = rec[0];
      if (tag == "#schema_version") {
        if (rec.size() != 2 || std::stoi(rec[1]) != kSchemaVersion)
          throw std::invalid_argument("report: schema version mismatch");
      } else if (tag == "#command") {
        t.command = rec.at(1);
      } else if (tag == "#meta") {
        t.meta[rec.at(1)] = nlohmann::json::parse(rec.at(2));
      } else if (tag == "#types") {
        types.assign(rec.begin() + 1, rec.end());
      }
      continue;
    }
    if (header.empty()) {
      header = rec;
      if (types.size() != header.size()) throw std::invalid_argument("report: types line does not match header");
      continue;
    }
    if (rec.size() != header.size()) throw std::invalid_argument("report: ragged csv row");
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (rec[i].empty() && types[i] != "string") continue;
      row[header[i]] = types[i] == "string" ? nlohmann::json(rec[i]) : nlohmann::json::parse(rec[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string to_pretty(const Table& t) {
  std::ostringstream out;
  out << t.command << " (schema " << kSchemaVersion << ")\n";
  for (auto it = t.meta.begin(); it != t.meta.end(); ++it)
    out << "  " << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
        << "\n";
  const auto cols = t.columns();
  if (cols.empty()) return out.str();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  for (const auto& r : t.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string s;
      if (r.contains(cols[i])) s = r.at(cols[i]).is_string() ? r.at(cols[i]).get<std::string>() : r.at(cols[i]).dump();
      width[i] = std::max(width[i], s.size());
      line.push_back(std::move(s));
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? "  " : "") << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
    }
    out << "\n";
  };
  out << "\n";
  emit(cols);
  for (const auto& line : cells) emit(line);
  return out.str();
}

}  // namespace nilorb::report
