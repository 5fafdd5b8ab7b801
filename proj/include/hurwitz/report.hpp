#pragma once

// Output rendering shared by the CLI: the same ordered JSON document becomes
// JSON, flattened "path: value" text, or CSV.

#include <json.hpp>

#include <string>
#include <string_view>

namespace hurwitz {

enum class Format { kJson, kText, kCsv };

// Throws ParseError for anything but json, text, csv.
Format parse_format(std::string_view s);

// CSV uses the top-level "table" array of objects when present, otherwise
// flattened key,value rows.
std::string render(const nlohmann::ordered_json& doc, Format fmt);

// Shortest round-trip decimal for a double; "null" for non-finite values.
std::string format_double(double v);

}  // namespace hurwitz
