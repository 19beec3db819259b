#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "wreathsim/wreath_group.hpp"

using namespace wreathsim;

namespace {

std::vector<WreathElement> all_elements(int n) {
    GroupIndexer gi(n);
    std::vector<WreathElement> out;
    out.reserve(gi.order());
    for (uint64_t r = 0; r < gi.order(); ++r) out.push_back(gi.unrank(r));
    return out;
}

// test oracle: invert embed_s2n by reading the block structure off the
// S_{2n} image table
WreathElement unembed_s2n(const Perm& e, int n) {
    int b = e(0) >= n ? 1 : 0;
    std::vector<uint8_t> s(static_cast<size_t>(n)), t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (b == 0) {
            s[static_cast<size_t>(i)] = static_cast<uint8_t>(e(i));
            t[static_cast<size_t>(i)] = static_cast<uint8_t>(e(n + i) - n);
        } else {
            s[static_cast<size_t>(i)] = static_cast<uint8_t>(e(i) - n);
            t[static_cast<size_t>(i)] = static_cast<uint8_t>(e(n + i));
        }
    }
    return WreathElement{Perm(std::move(s)), Perm(std::move(t)), b};
}

}  // namespace

TEST_CASE("perm basics") {
    Perm p = Perm::from_images({1, 2, 0});
    CHECK(p.degree() == 3);
    CHECK(p(0) == 1);
    CHECK(p.inverse().compose(p) == Perm::identity(3));
    CHECK(p.compose(p.inverse()) == Perm::identity(3));
    CHECK(Perm::from_images({1, 0, 2}).sign() == -1);
    CHECK(Perm::from_images({1, 2, 0}).sign() == 1);
    CHECK(Perm::identity(4).sign() == 1);
    CHECK_THROWS_AS(Perm::from_images({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("perm lehmer rank is the lexicographic order") {
    int n = 4;
    uint64_t f = factorial(n);
    std::vector<std::vector<uint8_t>> tables;
    for (uint64_t r = 0; r < f; ++r) {
        Perm p = Perm::from_lehmer_rank(n, r);
        CHECK(p.lehmer_rank() == r);
        std::vector<uint8_t> im;
        for (int i = 0; i < n; ++i) im.push_back(static_cast<uint8_t>(p(i)));
        tables.push_back(im);
    }
    CHECK(std::is_sorted(tables.begin(), tables.end()));
    CHECK_THROWS_AS(Perm::from_lehmer_rank(3, 6), std::invalid_argument);
}

TEST_CASE("compose: identity and involutive swaps") {
    auto elems = all_elements(3);
    WreathElement id = WreathElement::identity(3);
    for (const auto& x : elems) {
        CHECK(compose(id, x) == x);
        CHECK(compose(x, id) == x);
    }
    for (const auto& k : involutive_swaps(3)) CHECK(compose(k, k).is_identity());
}

TEST_CASE("compose matches the S_{2n} embedding oracle") {
    // ((01),(02),1) * ((12),id,0) computed through S_6 and pulled back
    WreathElement x{Perm::from_images({1, 0, 2}), Perm::from_images({2, 1, 0}), 1};
    WreathElement y{Perm::from_images({0, 2, 1}), Perm::identity(3), 0};
    Perm expected_embedded = embed_s2n(x).compose(embed_s2n(y));
    CHECK(compose(x, y) == unembed_s2n(expected_embedded, 3));

    // and exhaustively at n=3: embedding is a homomorphism
    auto elems = all_elements(3);
    for (const auto& a : elems)
        for (const auto& b : elems)
            CHECK(embed_s2n(compose(a, b)) == embed_s2n(a).compose(embed_s2n(b)));
}

TEST_CASE("compose rejects degree mismatch") {
    CHECK_THROWS_AS(compose(WreathElement::identity(2), WreathElement::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("inverse") {
    CHECK(inverse(WreathElement::identity(3)).is_identity());
    for (const auto& k : involutive_swaps(3)) CHECK(inverse(k) == k);

    // brute-force two-sided inverse as the oracle, n=3 exhaustive
    auto elems = all_elements(3);
    for (const auto& x : elems) {
        const WreathElement inv = inverse(x);
        CHECK(compose(x, inv).is_identity());
        CHECK(compose(inv, x).is_identity());
        int found = 0;
        for (const auto& y : elems)
            if (compose(x, y).is_identity() && compose(y, x).is_identity()) ++found;
        CHECK(found == 1);
        if (x.swap_bit == 0) CHECK(inv == WreathElement{x.sigma.inverse(), x.tau.inverse(), 0});
    }
}

TEST_CASE("embedding block rules") {
    CHECK(embed_s2n(WreathElement::identity(2)) == Perm::identity(4));
    // (id,id,1) at n=2 exchanges the blocks pointwise: (0 2)(1 3)
    WreathElement k{Perm::identity(2), Perm::identity(2), 1};
    CHECK(embed_s2n(k) == Perm::from_images({2, 3, 0, 1}));
}

TEST_CASE("embedding injective at n<=3, sampled multiplicative at n=4,5") {
    for (int n : {1, 2, 3}) {
        std::set<uint64_t> seen;
        for (const auto& x : all_elements(n)) seen.insert(embed_s2n(x).lehmer_rank());
        CHECK(seen.size() == GroupIndexer(n).order());
    }
    for (int n : {4, 5}) {
        GroupIndexer gi(n);
        std::mt19937_64 rng(123 + static_cast<uint64_t>(n));
        for (int t = 0; t < 10'000; ++t) {
            WreathElement x = gi.unrank(rng() % gi.order());
            WreathElement y = gi.unrank(rng() % gi.order());
            CHECK(embed_s2n(compose(x, y)) == embed_s2n(x).compose(embed_s2n(y)));
        }
    }
}

TEST_CASE("involutive swap lists") {
    CHECK(involutive_swaps(1).size() == 1);
    auto s3 = involutive_swaps(3);
    CHECK(s3.size() == 6);
    for (const auto& k : s3) {
        CHECK(compose(k, k).is_identity());
        CHECK(k.is_involutive_swap());
    }
    auto s4 = involutive_swaps(4);
    CHECK(s4.size() == 24);
    GroupIndexer gi(4);
    std::set<uint64_t> distinct;
    for (const auto& k : s4) distinct.insert(gi.rank(k));
    CHECK(distinct.size() == 24);
}

TEST_CASE("group indexer") {
    GroupIndexer gi(3);
    CHECK(gi.order() == 72);  // 2 * (3!)^2
    for (uint64_t r = 0; r < gi.order(); ++r) CHECK(gi.rank(gi.unrank(r)) == r);
    CHECK(gi.unrank(0).is_identity());
    CHECK_THROWS_AS(gi.unrank(72), std::invalid_argument);
    CHECK_THROWS_AS(GroupIndexer(0), std::invalid_argument);
    CHECK_THROWS_AS(GroupIndexer(9), std::invalid_argument);
}

TEST_CASE("group axioms exhaustive at n<=3") {
    for (int n : {1, 2, 3}) {
        auto elems = all_elements(n);
        for (const auto& x : elems)
            for (const auto& y : elems) {
                WreathElement xy = compose(x, y);
                for (const auto& z : elems) CHECK(compose(xy, z) == compose(x, compose(y, z)));
            }
    }
}

TEST_CASE("equal-sign predicate closed under compose and inverse") {
    for (int n : {3, 4}) {
        auto elems = all_elements(n);
        std::vector<WreathElement> even;
        for (const auto& x : elems)
            if (x.sigma.sign() == x.tau.sign()) even.push_back(x);
        for (const auto& x : even) {
            WreathElement ix = inverse(x);
            CHECK(ix.sigma.sign() == ix.tau.sign());
        }
        for (const auto& x : even)
            for (const auto& y : even) {
                WreathElement xy = compose(x, y);
                CHECK(xy.sigma.sign() == xy.tau.sign());
            }
    }
}
