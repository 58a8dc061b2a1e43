#include "hauslab/extended_real.hpp"

#include <array>
#include <charconv>

namespace hauslab {

std::string format_real(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string to_string(ExtendedReal v) {
    return format_real(v.value());
}

}  // namespace hauslab
