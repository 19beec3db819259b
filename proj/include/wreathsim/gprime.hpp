#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wreathsim/wreath_group.hpp"

namespace wreathsim {

struct SubgroupClosure {
    int n = 0;
    size_t generator_count = 0;
    std::vector<WreathElement> elements;  // sorted by rank
    uint64_t order() const { return elements.size(); }
};

// Breadth-first closure under left multiplication by the generators,
// starting from the identity.
SubgroupClosure generate_closure(std::span<const WreathElement> generators, int n);

// Membership test for G' = <involutive swaps>: sign(sigma) == sign(tau).
bool gprime_predicate(const WreathElement& x);

struct CharacterizationReport {
    int n = 0;
    bool match = false;       // closure of the swaps equals the predicate set
    uint64_t index = 0;       // |G| / |G'|
    uint64_t closure_order = 0;
    uint64_t group_order = 0;
};

// n <= 5 (closure over at most 28800 elements). For n >= 2 the index is 2;
// n = 1 is degenerate (the only swap is the identity-swap).
CharacterizationReport verify_characterization(int n);

}  // namespace wreathsim
