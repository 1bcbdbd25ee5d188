#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace osn {

// Serializes like nlohmann::json::dump, except that every floating-point
// number is written with exactly six decimals ("0.500000"). Non-finite
// values become null. indent < 0 gives a single line.
std::string dump_fixed(const nlohmann::ordered_json& value, int indent = -1);

}  // namespace osn
