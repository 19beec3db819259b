#include "wreathsim/common.hpp"

#include <cstdio>

namespace wreathsim {

std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    char buf[48];
    int pos = 48;
    while (v > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    return std::string(buf + pos, buf + 48);
}

u128 checked_mul_u128(u128 a, u128 b) {
    if (a != 0 && b > static_cast<u128>(-1) / a)
        throw std::overflow_error("128-bit index overflow");
    return a * b;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

}  // namespace wreathsim
