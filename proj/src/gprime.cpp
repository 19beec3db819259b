#include "wreathsim/gprime.hpp"

#include <deque>
#include <stdexcept>

namespace wreathsim {

SubgroupClosure generate_closure(std::span<const WreathElement> generators, int n) {
    GroupIndexer gi(n);
    if (gi.order() > (uint64_t{1} << 26))
        throw std::invalid_argument("generate_closure: group too large for desk scale");
    for (const auto& g : generators)
        if (g.degree() != n) throw std::invalid_argument("generate_closure: degree mismatch");
    std::vector<bool> seen(gi.order(), false);
    std::deque<WreathElement> frontier;
    WreathElement id = WreathElement::identity(n);
    seen[gi.rank(id)] = true;
    frontier.push_back(id);
    while (!frontier.empty()) {
        WreathElement cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : generators) {
            WreathElement next = compose(g, cur);
            uint64_t r = gi.rank(next);
            if (!seen[r]) {
                seen[r] = true;
                frontier.push_back(std::move(next));
            }
        }
    }
    SubgroupClosure out;
    out.n = n;
    out.generator_count = generators.size();
    for (uint64_t r = 0; r < gi.order(); ++r)
        if (seen[r]) out.elements.push_back(gi.unrank(r));
    return out;
}

bool gprime_predicate(const WreathElement& x) { return x.sigma.sign() == x.tau.sign(); }

CharacterizationReport verify_characterization(int n) {
    if (n < 1 || n > 5)
        throw std::invalid_argument("verify_characterization: n must be in [1,5]");
    GroupIndexer gi(n);
    auto swaps = involutive_swaps(n);
    SubgroupClosure closure = generate_closure(swaps, n);

    CharacterizationReport rep;
    rep.n = n;
    rep.group_order = gi.order();
    rep.closure_order = closure.order();
    rep.index = gi.order() / closure.order();

    std::vector<bool> in_closure(gi.order(), false);
    for (const auto& x : closure.elements) in_closure[gi.rank(x)] = true;
    rep.match = true;
    for (uint64_t r = 0; r < gi.order(); ++r) {
        if (in_closure[r] != gprime_predicate(gi.unrank(r))) {
            rep.match = false;
            break;
        }
    }
    return rep;
}

}  // namespace wreathsim
