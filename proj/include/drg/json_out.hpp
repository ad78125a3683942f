#pragma once

#include <json.hpp>

#include <string>

namespace drg {

// Deterministic serialization: insertion-ordered fields, floats printed with
// 17 significant digits, two-space indentation.  Same document, same bytes.
std::string to_json_text(const nlohmann::ordered_json& j);

} // namespace drg
