#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "wreathsim/state_space.hpp"
#include "wreathsim/verify.hpp"

using namespace wreathsim;

namespace {

HiddenSubgroup h_p3k3() { return build_hidden_subgroup(normalize_pair(builtin_p3(), builtin_k3())); }
HiddenSubgroup h_p3p3() { return build_hidden_subgroup(normalize_pair(builtin_p3(), builtin_p3())); }

SparseState random_state(const SpaceConfig& cfg, std::mt19937_64& rng, int support) {
    std::vector<SparseState::Entry> entries;
    for (int i = 0; i < support; ++i) {
        u128 idx = static_cast<u128>(rng() % static_cast<uint64_t>(cfg.dimension));
        double amp = static_cast<double>(rng()) / static_cast<double>(~uint64_t{0}) - 0.5;
        entries.emplace_back(idx, amp);
    }
    SparseState s = SparseState::from_entries(std::move(entries));
    return s.scaled(1.0 / s.norm());
}

}  // namespace

TEST_CASE("space config dimensions") {
    SpaceConfig c31 = SpaceConfig::create(3, 1);
    CHECK(c31.group_order == 72);
    CHECK(c31.dimension == 72);
    SpaceConfig c32 = SpaceConfig::create(3, 2);
    CHECK(c32.dimension == 5184);  // 2^m (n!)^{2m} = 4 * 1296
    SpaceConfig c65 = SpaceConfig::create(6, 5);  // ~1.2e30 still fits in 128 bits
    CHECK(c65.group_order == 1'036'800);
    CHECK_THROWS_AS(SpaceConfig::create(8, 5), std::overflow_error);
    CHECK_THROWS_AS(SpaceConfig::create(3, 0), std::invalid_argument);
}

TEST_CASE("basis index encode/decode roundtrip") {
    SpaceConfig cfg = SpaceConfig::create(3, 3);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 1000; ++t) {
        std::vector<uint64_t> digits(3);
        for (auto& d : digits) d = rng() % cfg.group_order;
        basis_index_t idx = encode_basis_index(digits, cfg);
        CHECK(decode_basis_index(idx, cfg) == digits);
    }
    CHECK_THROWS_AS(decode_basis_index(cfg.dimension, cfg), std::invalid_argument);
}

TEST_CASE("uniform superposition") {
    GroupIndexer gi2(2);
    std::vector<WreathElement> just_id{WreathElement::identity(2)};
    SparseState s = uniform_superposition(just_id, gi2);
    CHECK(s.support_size() == 1);
    CHECK(s.amplitude(0) == doctest::Approx(1.0));

    std::vector<WreathElement> all;
    for (uint64_t r = 0; r < gi2.order(); ++r) all.push_back(gi2.unrank(r));
    SparseState g = uniform_superposition(all, gi2);
    CHECK(g.support_size() == 8);
    for (const auto& [idx, amp] : g.entries()) CHECK(amp == doctest::Approx(1.0 / std::sqrt(8.0)));
    CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(uniform_superposition({}, gi2), std::invalid_argument);
    std::vector<WreathElement> dup{WreathElement::identity(2), WreathElement::identity(2)};
    CHECK_THROWS_AS(uniform_superposition(dup, gi2), std::invalid_argument);
}

TEST_CASE("coset states") {
    GroupIndexer gi(3);
    HiddenSubgroup trivial = HiddenSubgroup::from_elements(3, {WreathElement::identity(3)});
    SparseState basis = coset_state(WreathElement::identity(3), trivial, gi);
    CHECK(basis.support_size() == 1);

    HiddenSubgroup h = h_p3k3();
    SparseState c = coset_state(WreathElement::identity(3), h, gi);
    CHECK(c.support_size() == 12);
    for (const auto& [idx, amp] : c.entries())
        CHECK(amp == doctest::Approx(1.0 / std::sqrt(12.0)));

    // support of |cH| is invariant under right multiplication by k in H
    HiddenSubgroup hp = h_p3p3();
    SpaceConfig cfg = SpaceConfig::create(3, 1);
    WreathElement witness{Perm::identity(3), Perm::identity(3), 1};
    REQUIRE(hp.contains(witness));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        WreathElement rep = gi.unrank(rng() % gi.order());
        SparseState cs = coset_state(rep, hp, gi);
        SparseState moved = apply_right_mult(cs, witness, 1, cfg);
        CHECK(max_abs_difference(cs, moved) <= 1e-12);
        CHECK(cs.support_size() == hp.order());
    }
}

TEST_CASE("tensor product") {
    GroupIndexer gi(2);
    SpaceConfig cfg1 = SpaceConfig::create(2, 1);
    SpaceConfig cfg2 = SpaceConfig::create(2, 2);
    std::vector<WreathElement> x{gi.unrank(3)};
    std::vector<WreathElement> y{gi.unrank(5)};
    SparseState a = uniform_superposition(x, gi);
    SparseState b = uniform_superposition(y, gi);

    std::vector<SparseState> single{a};
    CHECK(max_abs_difference(tensor_product(single, cfg1), a) == 0.0);

    std::vector<SparseState> both{a, b};
    SparseState ab = tensor_product(both, cfg2);
    CHECK(ab.support_size() == 1);
    CHECK(ab.amplitude(3 * 8 + 5) == doctest::Approx(1.0));
    CHECK(ab.norm() == doctest::Approx(1.0));

    HiddenSubgroup h = HiddenSubgroup::from_elements(
        2, {WreathElement::identity(2),
            WreathElement{Perm::from_images({1, 0}), Perm::from_images({1, 0}), 0}});
    SparseState cs = coset_state(WreathElement::identity(2), h, gi);
    std::vector<SparseState> pair{cs, cs};
    CHECK_THROWS_AS(tensor_product(pair, cfg2, 3), resource_error);
}

TEST_CASE("k-vectors") {
    SpaceConfig cfg = SpaceConfig::create(3, 1);
    GroupIndexer gi(3);
    auto swaps = involutive_swaps(3);

    // m=1, c=identity: (|e> + |k>)/sqrt(2)
    for (int ki = 0; ki < 6; ++ki) {
        KVectorId id{ki, {0}};
        SparseState v = k_vector(id, cfg);
        CHECK(v.support_size() == 2);
        CHECK(v.amplitude(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(v.amplitude(gi.rank(swaps[static_cast<size_t>(ki)])) ==
              doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(v.norm() == doctest::Approx(1.0));
    }

    // unequal k-vectors with the same k are orthogonal; ids are unique
    std::vector<KVectorId> ids;
    for_each_k_vector_id(cfg, 0, [&](const KVectorId& id) { ids.push_back(id); });
    CHECK(ids.size() == 36);  // (|G|/2)^m
    std::set<std::vector<uint64_t>> label_sets;
    for (const auto& id : ids) label_sets.insert(id.coset_labels);
    CHECK(label_sets.size() == 36);
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = i + 1; j < ids.size(); ++j)
            CHECK(inner_product(k_vector(ids[i], cfg), k_vector(ids[j], cfg)) ==
                  doctest::Approx(0.0));

    // non-canonical label rejected: rank of (id,id,1) is not canonical for k0
    KVectorId bad{0, {gi.rank(swaps[0])}};
    CHECK_THROWS_AS(k_vector(bad, cfg), std::invalid_argument);
}

TEST_CASE("apply_right_mult") {
    SpaceConfig cfg = SpaceConfig::create(3, 2);
    GroupIndexer gi(3);
    HiddenSubgroup h = h_p3k3();
    std::vector<WreathElement> reps{gi.unrank(17), gi.unrank(40)};
    SparseState psi = coset_tensor_state(reps, h, cfg);
    WreathElement k = involutive_swaps(3)[2];

    CHECK(max_abs_difference(apply_right_mult(psi, k, 0, cfg), psi) == 0.0);
    SparseState once = apply_right_mult(psi, k, 0b11, cfg);
    CHECK(once.norm() == doctest::Approx(1.0));
    CHECK(max_abs_difference(apply_right_mult(once, k, 0b11, cfg), psi) <= 1e-15);

    // coset tensors are invariant under right multiplication by k in H
    HiddenSubgroup hp = h_p3p3();
    WreathElement witness{Perm::identity(3), Perm::identity(3), 1};
    SparseState phi = coset_tensor_state(reps, hp, cfg);
    for (uint64_t mask = 0; mask < 4; ++mask)
        CHECK(max_abs_difference(apply_right_mult(phi, witness, mask, cfg), phi) <= 1e-12);
}

TEST_CASE("swap projector") {
    SpaceConfig cfg = SpaceConfig::create(3, 2);
    GroupIndexer gi(3);
    auto swaps = involutive_swaps(3);

    // a k-vector is a fixed point
    KVectorId id{1, {0, 2}};
    SparseState v = k_vector(id, cfg);
    CHECK(max_abs_difference(swap_projector_apply(v, swaps[1], cfg), v) <= 1e-12);

    // basis state: <psi|P(k)|psi> = 2^{-m}
    SparseState basis = SparseState::from_entries({{encode_basis_index(
                                                        std::vector<uint64_t>{5, 9}, cfg),
                                                    1.0}});
    for (const auto& k : swaps)
        CHECK(inner_product(basis, swap_projector_apply(basis, k, cfg)) ==
              doctest::Approx(0.25).epsilon(1e-12));

    // coset tensor with k in H is a fixed point (theorem 1 mechanism)
    HiddenSubgroup hp = h_p3p3();
    WreathElement witness{Perm::identity(3), Perm::identity(3), 1};
    std::vector<WreathElement> reps{gi.unrank(30), gi.unrank(66)};
    SparseState psi = coset_tensor_state(reps, hp, cfg);
    CHECK(max_abs_difference(swap_projector_apply(psi, witness, cfg), psi) <= 1e-12);

    // not-a-swap rejection
    CHECK_THROWS_AS(swap_projector_apply(psi, WreathElement::identity(3), cfg),
                    std::invalid_argument);
}

TEST_CASE("swap projector is idempotent and self-adjoint on random states") {
    std::mt19937_64 rng(99);
    for (int m : {1, 2}) {
        SpaceConfig cfg = SpaceConfig::create(3, m);
        auto swaps = involutive_swaps(3);
        for (int t = 0; t < 50; ++t) {
            SparseState psi = random_state(cfg, rng, 12);
            SparseState phi = random_state(cfg, rng, 12);
            const auto& k = swaps[t % swaps.size()];
            SparseState p1 = swap_projector_apply(psi, k, cfg);
            SparseState p2 = swap_projector_apply(p1, k, cfg);
            CHECK(max_abs_difference(p1, p2) <= 1e-12);
            CHECK(std::abs(inner_product(phi, p1) -
                           inner_product(swap_projector_apply(phi, k, cfg), psi)) <= 1e-12);
        }
    }
}

TEST_CASE("swap projector equals the k-vector expansion at (2,1)") {
    SpaceConfig cfg = SpaceConfig::create(2, 1);
    auto swaps = involutive_swaps(2);
    std::mt19937_64 rng(7);
    for (const auto& k : swaps) {
        int ki = &k - swaps.data();
        std::vector<SparseState> basis;
        for_each_k_vector_id(cfg, ki, [&](const KVectorId& id) { basis.push_back(k_vector(id, cfg)); });
        for (int t = 0; t < 10; ++t) {
            SparseState psi = random_state(cfg, rng, 5);
            SparseState via_projector = swap_projector_apply(psi, k, cfg);
            SparseState via_expansion;
            for (const auto& v : basis) via_expansion = add(via_expansion, v.scaled(inner_product(v, psi)));
            CHECK(max_abs_difference(via_projector, via_expansion) <= 1e-12);
        }
    }
}

TEST_CASE("swap expectation closed form") {
    GroupIndexer gi(3);
    HiddenSubgroup hp = h_p3p3();
    HiddenSubgroup hn = h_p3k3();
    auto swaps = involutive_swaps(3);
    std::vector<WreathElement> reps{gi.unrank(14), gi.unrank(50), gi.unrank(3)};
    WreathElement witness{Perm::identity(3), Perm::identity(3), 1};
    CHECK(swap_expectation(reps, hp, witness) == 1.0);
    for (const auto& k : swaps) CHECK(swap_expectation(reps, hn, k) == 0.125);

    // closed form agrees with the explicit sparse computation, m=2
    SpaceConfig cfg = SpaceConfig::create(3, 2);
    std::mt19937_64 rng(3);
    std::vector<WreathElement> r2{gi.unrank(rng() % 72), gi.unrank(rng() % 72)};
    for (const auto& h : {hp, hn}) {
        SparseState psi = coset_tensor_state(r2, h, cfg);
        for (const auto& k : swaps) {
            double closed = swap_expectation(r2, h, k);
            double explicit_val = inner_product(psi, swap_projector_apply(psi, k, cfg));
            CHECK(std::abs(closed - explicit_val) <= 1e-12);
        }
    }
}

TEST_CASE("k-vector enumeration counts and budget") {
    SpaceConfig c21 = SpaceConfig::create(2, 1);
    uint64_t per_swap = 0, total = 0;
    for_each_k_vector_id(c21, 0, [&](const KVectorId&) { ++per_swap; });
    for_each_k_vector_id(c21, std::nullopt, [&](const KVectorId&) { ++total; });
    CHECK(per_swap == 4);
    CHECK(total == 8);
    CHECK(k_dictionary_columns(c21) == 8);

    SpaceConfig c32 = SpaceConfig::create(3, 2);
    uint64_t per_swap32 = 0, total32 = 0;
    for_each_k_vector_id(c32, 2, [&](const KVectorId&) { ++per_swap32; });
    for_each_k_vector_id(c32, std::nullopt, [&](const KVectorId&) { ++total32; });
    CHECK(per_swap32 == 1296);
    CHECK(total32 == 7776);

    SpaceConfig c34 = SpaceConfig::create(3, 4);
    CHECK_THROWS_AS(for_each_k_vector_id(c34, std::nullopt, [](const KVectorId&) {}),
                    resource_error);
}

TEST_CASE("theorem 1 structural check: P(k) fixes coset tensors when k in H") {
    GroupIndexer gi(3);
    HiddenSubgroup hp = h_p3p3();
    REQUIRE(contains_involutive_swap(hp));
    WreathElement witness{Perm::identity(3), Perm::identity(3), 1};
    std::mt19937_64 rng(21);
    for (int m : {1, 2, 3}) {
        SpaceConfig cfg = SpaceConfig::create(3, m);
        std::vector<WreathElement> reps;
        for (int i = 0; i < m; ++i) reps.push_back(gi.unrank(rng() % 72));
        SparseState psi = coset_tensor_state(reps, hp, cfg);
        CHECK(max_abs_difference(swap_projector_apply(psi, witness, cfg), psi) <= 1e-12);
    }
}
