#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace domp {

/// Shortest decimal string that reads back to exactly the same double.
inline std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

}  // namespace domp
