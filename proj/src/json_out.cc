#include "osn/json_out.h"

#include <cmath>

#include <fmt/format.h>

namespace osn {
namespace {

using nlohmann::ordered_json;

void emit(std::string& out, const ordered_json& v, int indent, int depth) {
  auto newline = [&](int level) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  const char* colon = indent < 0 ? ":" : ": ";
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += ordered_json(it.key()).dump();
        out += colon;
        emit(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        emit(out, item, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case ordered_json::value_t::number_float: {
      double x = v.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
      } else {
        // Avoid "-0.000000".
        std::string s = fmt::format("{:.6f}", x);
        if (s == "-0.000000") s = "0.000000";
        out += s;
      }
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_fixed(const nlohmann::ordered_json& value, int indent) {
  std::string out;
  emit(out, value, indent, 0);
  return out;
}

}  // namespace osn
