#pragma once
// File and JSON helpers shared by the serializers.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace emotive::detail {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

// Shortest round-trip decimal representation.
std::string format_double(double v);

// Parses a complete JSON document, mapping syntax errors to ParseError.
Json parse_json(const std::string& text, const std::string& source);

// Checks the "format"/"version" header of a versioned document.
void expect_header(const Json& doc, std::string_view format, int version, const std::string& source);

// Splits one CSV line on commas. Fields may not contain commas or quotes.
std::vector<std::string> split_csv(std::string_view line);
std::string trim(std::string_view s);
double parse_number(std::string_view text, const std::string& source, std::size_t line,
                    std::string_view field);

}  // namespace emotive::detail
