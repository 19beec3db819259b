#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wreathsim {

// Basis indices are 128 bits wide, so configurations with dimension up to
// 2^127 - 1 stay addressable (e.g. n=6, m=5 has dimension ~1.2e30).
using u128 = unsigned __int128;

std::string to_string_u128(u128 v);

// Multiplies with overflow detection; throws std::overflow_error.
u128 checked_mul_u128(u128 a, u128 b);

// Fixed 17-significant-digit formatting used by all machine-readable output.
std::string format_double(double v);

inline constexpr uint64_t kDefaultNnzBudget = uint64_t{1} << 27;

// A materialization guard tripped (tensor support or dictionary budget).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A proved claim failed beyond tolerance; signals an implementation bug.
class theorem_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace wreathsim
