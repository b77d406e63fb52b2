#include "chaoscrack/key_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace chaoscrack {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

using Fields = std::map<std::string, std::string, std::less<>>;

Fields parse_fields(const std::string& text, const std::set<std::string, std::less<>>& allowed) {
  Fields fields;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("line " + std::to_string(lineno) + ": expected name=value");
    }
    std::string name(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (!allowed.contains(name)) {
      throw FormatError("line " + std::to_string(lineno) + ": unknown field '" + name + "'");
    }
    if (!fields.emplace(name, value).second) {
      throw FormatError("line " + std::to_string(lineno) + ": duplicate field '" + name + "'");
    }
  }
  return fields;
}

const std::string& require(const Fields& fields, const char* name) {
  const auto it = fields.find(name);
  if (it == fields.end()) throw FormatError(std::string("missing field '") + name + "'");
  return it->second;
}

template <typename T>
T parse_number(std::string_view text, const char* name) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw FormatError(std::string("field '") + name + "': cannot parse number '" +
                      std::string(text) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, const char* name) {
  std::vector<T> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number<T>(text.substr(start, comma - start), name));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename Range, typename Fmt>
std::string join(const Range& values, Fmt fmt) {
  std::string out;
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ',';
    out += fmt(v);
    first = false;
  }
  return out;
}

}  // namespace

SecretKey load_key(const std::string& text) {
  const auto fields = parse_fields(
      text, {"algorithm", "n0", "alpha", "m", "h", "x0", "c", "q0", "beta"});
  SecretKey key;
  if (const auto it = fields.find("algorithm"); it != fields.end()) {
    key.algorithm = parse_algorithm(it->second);
  }
  const auto n0 = parse_number<long long>(require(fields, "n0"), "n0");
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  key.n0 = static_cast<std::size_t>(n0);
  key.alpha = parse_number<double>(require(fields, "alpha"), "alpha");
  key.m = parse_number<double>(require(fields, "m"), "m");
  key.h = parse_number<double>(require(fields, "h"), "h");
  key.x0 = parse_list<double>(require(fields, "x0"), "x0");
  if (const auto it = fields.find("c"); it != fields.end()) key.c = parse_number<int>(it->second, "c");
  if (const auto it = fields.find("q0"); it != fields.end()) {
    key.q0 = parse_number<double>(it->second, "q0");
  }
  if (const auto it = fields.find("beta"); it != fields.end()) {
    key.beta = parse_number<double>(it->second, "beta");
  }
  key.validate();
  return key;
}

std::string save_key(const SecretKey& key) {
  std::ostringstream out;
  out << "algorithm=" << to_string(key.algorithm) << '\n'
      << "n0=" << key.n0 << '\n'
      << "alpha=" << format_double(key.alpha) << '\n'
      << "m=" << format_double(key.m) << '\n'
      << "h=" << format_double(key.h) << '\n'
      << "x0=" << join(key.x0, format_double) << '\n';
  if (key.c) out << "c=" << *key.c << '\n';
  if (key.q0) out << "q0=" << format_double(*key.q0) << '\n';
  if (key.beta) out << "beta=" << format_double(*key.beta) << '\n';
  return out.str();
}

EquivalentKey load_equivalent_key(const std::string& text) {
  const auto fields = parse_fields(text, {"n0", "c", "z", "y_long"});
  EquivalentKey key;
  const auto n0 = parse_number<long long>(require(fields, "n0"), "n0");
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  key.n0 = static_cast<std::size_t>(n0);
  if (const auto it = fields.find("c"); it != fields.end()) {
    const int c = parse_number<int>(it->second, "c");
    if (c < 0 || c > 255) throw ValidationError("c must be in [0, 255]");
    key.c = static_cast<Byte>(c);
  }
  if (const auto it = fields.find("z"); it != fields.end()) {
    key.z = PermutationVector(parse_list<std::uint32_t>(it->second, "z"));
  }
  for (const int v : parse_list<int>(require(fields, "y_long"), "y_long")) {
    if (v < 0 || v > 255) throw ValidationError("y_long entries must be bytes");
    key.y_long.push_back(static_cast<Byte>(v));
  }
  key.validate();
  return key;
}

std::string save_equivalent_key(const EquivalentKey& key) {
  std::ostringstream out;
  out << "n0=" << key.n0 << '\n';
  if (key.c) out << "c=" << static_cast<int>(*key.c) << '\n';
  if (key.z) {
    out << "z=" << join(key.z->values(), [](std::uint32_t v) { return std::to_string(v); })
        << '\n';
  }
  out << "y_long=" << join(key.y_long, [](Byte v) { return std::to_string(v); }) << '\n';
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

}  // namespace chaoscrack
