#include "plineq/serialize.hpp"

#include <fstream>
#include <sstream>

namespace plineq {

namespace {

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_and_column(text, e.byte);
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    if (auto pos = what.find("] "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

Rational rational_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ": expected a number or rational string, got " + std::string(j.type_name()));
}

namespace detail {

const Json& require_field(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing");
  return j[key];
}

const Json& require_array(const Json& j, const char* key, const std::string& path) {
  const Json& a = require_field(j, key, path);
  if (!a.is_array()) throw ParseError(path + "." + key + ": expected an array");
  return a;
}

}  // namespace detail
}  // namespace plineq
