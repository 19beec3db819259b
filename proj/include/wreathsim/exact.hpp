#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wreathsim/projector.hpp"
#include "wreathsim/state_space.hpp"

namespace wreathsim {

// An exact rational in lowest terms plus its double rounding.
struct RationalValue {
    std::string numerator;
    std::string denominator;
    double value = 0.0;

    bool is_one() const { return numerator == denominator; }
    std::string to_string() const { return numerator + "/" + denominator; }
};

// Ground-truth p1 for coset-state tensors: unnormalized 0/1 dictionary,
// exact integer Gram matrix, fraction-free (Bareiss) echelon of the normal
// equations, rational back-substitution. The echelon is computed once per
// configuration and reused across states.
class ExactProjector {
public:
    explicit ExactProjector(const SpaceConfig& cfg, const EngineLimits& lim = {},
                            std::vector<int> swap_filter = {});
    ~ExactProjector();
    ExactProjector(ExactProjector&&) noexcept;

    uint64_t columns() const;
    RationalValue p1(std::span<const WreathElement> reps, const HiddenSubgroup& h) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

RationalValue p1_exact_rational(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                                const SpaceConfig& cfg, const EngineLimits& lim = {});

ProjectionReport to_report(const RationalValue& v, const SpaceConfig& cfg, uint64_t columns);

namespace detail {

// Test support: exact squared-projection-norm ratio of psi onto span(B)
// given the integer normal system gram = B^T B, load = B^T psi and
// |psi|^2 = norm_num/norm_den. use_bareiss=false runs a plain rational
// Gaussian elimination instead; the two must agree on any input.
RationalValue exact_projection_ratio(const std::vector<std::vector<long long>>& gram,
                                     const std::vector<long long>& load, long long norm_num,
                                     long long norm_den, bool use_bareiss);

}  // namespace detail

}  // namespace wreathsim
