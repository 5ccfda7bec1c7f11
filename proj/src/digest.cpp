#include "rce/digest.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace rce {

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t from_hex(std::string_view text) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
    if (text.empty() || text.size() > 16 || ec != std::errc{} || end != text.data() + text.size()) {
        throw std::invalid_argument("not a 64-bit hex value: '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace rce
