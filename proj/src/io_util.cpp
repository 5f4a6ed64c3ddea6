#include "io_util.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "emotive/errors.hpp"

namespace emotive::detail {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  // A missing input is a user error, so it maps to the validation exit code.
  if (!in) throw ParseError(path.string(), 0, "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
}

void expect_header(const Json& doc, std::string_view format, int version,
                   const std::string& source) {
  if (!doc.is_object()) throw ParseError(source, 0, "expected a JSON object");
  const auto f = doc.find("format");
  if (f == doc.end() || !f->is_string() || f->get<std::string>() != format)
    throw ParseError(source, 0, "missing or wrong \"format\" (expected \"" + std::string(format) + "\")");
  const auto v = doc.find("version");
  if (v == doc.end() || !v->is_number_integer())
    throw ParseError(source, 0, "missing \"version\"");
  if (v->get<int>() != version)
    throw VersionMismatch(source + ": unsupported version " + std::to_string(v->get<int>()) +
                          " (expected " + std::to_string(version) + ")");
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view text, const std::string& source, std::size_t line,
                    std::string_view field) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
    throw ParseError(source, line,
                     "field '" + std::string(field) + "': not a number: '" + std::string(text) + "'");
  return v;
}

}  // namespace emotive::detail
