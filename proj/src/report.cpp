#include "hurwitz/report.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {
namespace {

using Json = nlohmann::ordered_json;

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    if (v.empty()) out.emplace_back(path, "{}");
    for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array()) {
    if (v.empty()) out.emplace_back(path, "[]");
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, scalar(v));
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string cell_of(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_structured()) return v.dump();
  return scalar(v);
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "json") return Format::kJson;
  if (s == "text") return Format::kText;
  if (s == "csv") return Format::kCsv;
  throw ParseError("unknown format '" + std::string(s) + "'");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string render(const Json& doc, Format fmt) {
  switch (fmt) {
    case Format::kJson:
      return doc.dump(2) + "\n";
    case Format::kText: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(doc, "", rows);
      std::string out;
      for (const auto& [k, v] : rows) out += k + ": " + v + "\n";
      return out;
    }
    case Format::kCsv: {
      std::string out;
      if (doc.is_object() && doc.contains("table") && doc["table"].is_array()) {
        const Json& t = doc["table"];
        std::vector<std::string> cols;
        std::set<std::string> seen;
        for (const auto& row : t) {
          if (!row.is_object()) continue;
          for (const auto& [k, x] : row.items()) {
            if (seen.insert(k).second) cols.push_back(k);
          }
        }
        for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_cell(cols[i]);
        out += "\n";
        for (const auto& row : t) {
          for (std::size_t i = 0; i < cols.size(); ++i) {
            out += i ? "," : "";
            if (row.is_object() && row.contains(cols[i])) out += csv_cell(cell_of(row[cols[i]]));
          }
          out += "\n";
        }
        return out;
      }
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(doc, "", rows);
      out = "key,value\n";
      for (const auto& [k, v] : rows) out += csv_cell(k) + "," + csv_cell(v) + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace hurwitz
