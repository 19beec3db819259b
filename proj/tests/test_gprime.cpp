#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "wreathsim/gprime.hpp"

using namespace wreathsim;

TEST_CASE("closure of the identity is trivial") {
    std::vector<WreathElement> gens{WreathElement::identity(3)};
    SubgroupClosure c = generate_closure(gens, 3);
    CHECK(c.order() == 1);
    CHECK(c.elements[0].is_identity());
}

TEST_CASE("closure of the swaps has index 2") {
    SubgroupClosure c3 = generate_closure(involutive_swaps(3), 3);
    CHECK(c3.order() == 36);  // |G| = 72 at n=3
    SubgroupClosure c4 = generate_closure(involutive_swaps(4), 4);
    CHECK(c4.order() == 576);  // 1152 / 2
}

TEST_CASE("closure elements come out sorted by rank and closed") {
    SubgroupClosure c = generate_closure(involutive_swaps(3), 3);
    GroupIndexer gi(3);
    std::vector<uint64_t> ranks;
    for (const auto& x : c.elements) ranks.push_back(gi.rank(x));
    CHECK(std::is_sorted(ranks.begin(), ranks.end()));
    for (const auto& x : c.elements) {
        CHECK(std::binary_search(ranks.begin(), ranks.end(), gi.rank(inverse(x))));
        CHECK(std::binary_search(ranks.begin(), ranks.end(),
                                 gi.rank(compose(x, c.elements[5]))));
    }
}

TEST_CASE("gprime predicate") {
    CHECK(gprime_predicate(WreathElement::identity(4)));
    CHECK_FALSE(gprime_predicate(
        WreathElement{Perm::from_images({1, 0, 2}), Perm::identity(3), 0}));
    for (int n : {2, 3, 4, 5})
        for (const auto& k : involutive_swaps(n)) CHECK(gprime_predicate(k));
}

TEST_CASE("characterization verified for 2 <= n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        CharacterizationReport rep = verify_characterization(n);
        CHECK(rep.match);
        CHECK(rep.index == 2);
        CHECK(rep.closure_order * 2 == rep.group_order);
    }
}

TEST_CASE("n=1 is degenerate: index 1") {
    CharacterizationReport rep = verify_characterization(1);
    CHECK(rep.match);  // every element has sign(sigma) == sign(tau) at n=1
    CHECK(rep.index == 1);
    CHECK(rep.closure_order == 2);
    CHECK_THROWS_AS(verify_characterization(6), std::invalid_argument);
}
