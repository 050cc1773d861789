#include "dynsfm/core/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dynsfm/core/errors.hpp"

namespace dynsfm {

namespace {

void append_escaped(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_double(double v, std::string& out) {
  if (!std::isfinite(v)) throw NumericalFailure("non-finite value in JSON output");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
  // Keep the value typed as a number-with-fraction on re-parse.
  if (out.find_first_of(".eE", out.size() - std::strlen(buf)) == std::string::npos) {
    out += ".0";
  }
}

void dump(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string pad_close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad;
        append_escaped(it.key(), out);
        out += ": ";
        dump(it.value(), indent, depth + 1, out);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad_close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump(j[i], indent, depth + 1, out);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad_close + "]";
      return;
    }
    case Json::value_t::string:
      append_escaped(j.get_ref<const std::string&>(), out);
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case Json::value_t::number_float:
      append_double(j.get<double>(), out);
      return;
    case Json::value_t::null:
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_canonical(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  out += '\n';
  return out;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  f << dump_canonical(j);
  if (!f) throw IoError("write failed: " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path.string());
  try {
    return Json::parse(f);
  } catch (const std::exception& e) {
    throw IoError("parse error in " + path.string() + ": " + e.what());
  }
}

}  // namespace dynsfm
