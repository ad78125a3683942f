#include "drg/json_out.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace drg {

namespace {

void escape_string(std::ostringstream& os, const std::string& s) {
    os << '"';
    for (char ch : s) {
        switch (ch) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            case '\r': os << "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    os << buf;
                } else {
                    os << ch;
                }
        }
    }
    os << '"';
}

void write_value(std::ostringstream& os, const nlohmann::ordered_json& j,
                 int indent) {
    std::string pad(2 * indent, ' ');
    std::string pad1(2 * (indent + 1), ' ');
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad1;
                escape_string(os, it.key());
                os << ": ";
                write_value(os, it.value(), indent + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ",\n";
                first = false;
                os << pad1;
                write_value(os, v, indent + 1);
            }
            os << "\n" << pad << "]";
            return;
        }
        case nlohmann::ordered_json::value_t::string:
            escape_string(os, j.get<std::string>());
            return;
        case nlohmann::ordered_json::value_t::boolean:
            os << (j.get<bool>() ? "true" : "false");
            return;
        case nlohmann::ordered_json::value_t::number_integer:
            os << j.get<long long>();
            return;
        case nlohmann::ordered_json::value_t::number_unsigned:
            os << j.get<unsigned long long>();
            return;
        case nlohmann::ordered_json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf;
            return;
        }
        default:
            os << "null";
            return;
    }
}

} // namespace

std::string to_json_text(const nlohmann::ordered_json& j) {
    std::ostringstream os;
    write_value(os, j, 0);
    os << "\n";
    return os.str();
}

} // namespace drg
