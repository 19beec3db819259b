#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wreathsim/common.hpp"
#include "wreathsim/graph.hpp"
#include "wreathsim/wreath_group.hpp"

namespace wreathsim {

// Basis index of |g_1,...,g_m>: mixed-radix over group ranks with position 1
// most significant. See common.hpp for the 128-bit width rationale.
using basis_index_t = u128;

struct SpaceConfig {
    int n = 0;
    int m = 0;
    uint64_t group_order = 0;
    u128 dimension = 0;  // group_order^m == 2^m (n!)^{2m}

    // Throws std::overflow_error when the dimension exceeds 2^127 - 1.
    static SpaceConfig create(int n, int m);
};

basis_index_t encode_basis_index(std::span<const uint64_t> ranks, const SpaceConfig& cfg);
std::vector<uint64_t> decode_basis_index(basis_index_t idx, const SpaceConfig& cfg);

// Finitely supported real-amplitude vector over the basis G^m. Entries are
// kept sorted by index; amplitudes below kZeroDrop are dropped. Every state
// produced by the constructors below is unit norm.
class SparseState {
public:
    static constexpr double kZeroDrop = 1e-15;
    using Entry = std::pair<basis_index_t, double>;

    SparseState() = default;
    // Sorts, merges duplicate indices, drops near-zero amplitudes.
    static SparseState from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    size_t support_size() const { return entries_.size(); }
    double norm_sq() const;
    double norm() const;
    double amplitude(basis_index_t idx) const;  // 0 when absent
    SparseState scaled(double factor) const;

private:
    std::vector<Entry> entries_;
};

double inner_product(const SparseState& a, const SparseState& b);
SparseState add(const SparseState& a, const SparseState& b);
double max_abs_difference(const SparseState& a, const SparseState& b);

// |X> = (1/sqrt|X|) sum |x>, a single-factor (m=1) state.
SparseState uniform_superposition(std::span<const WreathElement> xs, const GroupIndexer& gi);

// Left-coset state |cH>; support is exactly {rank(c*h) : h in H}.
SparseState coset_state(const WreathElement& c, const HiddenSubgroup& h, const GroupIndexer& gi);

// Amplitudes multiply, supports combine as a Cartesian product under the
// mixed-radix encoding. Refuses to materialize beyond support_budget entries.
SparseState tensor_product(std::span<const SparseState> factors, const SpaceConfig& cfg,
                           uint64_t support_budget = kDefaultNnzBudget);

// |c_1 H> ⊗ ... ⊗ |c_m H>; support size |H|^m.
SparseState coset_tensor_state(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                               const SpaceConfig& cfg, uint64_t support_budget = kDefaultNnzBudget);

// Canonical name of one k-vector: the swap's position in involutive_swaps(n)
// plus, per tensor position, min(rank(c), rank(c*k)) over the two-element
// left coset {c, ck}.
struct KVectorId {
    int swap_rank = 0;
    std::vector<uint64_t> coset_labels;

    bool operator==(const KVectorId&) const = default;
};

// 2^m support entries, all amplitudes 2^{-m/2}. Throws on a non-canonical
// label.
SparseState k_vector(const KVectorId& id, const SpaceConfig& cfg);

// Basis permutation |g_1,...,g_m> -> |g_1',...,g_m'> with g_i' = g_i * k for
// positions i whose bit is set in position_mask (bit 0 = position 1).
SparseState apply_right_mult(const SparseState& psi, const WreathElement& k, uint64_t position_mask,
                             const SpaceConfig& cfg);

// P(k) psi = 2^{-m} sum over all position subsets of apply_right_mult.
// k must be an involutive swap.
SparseState swap_projector_apply(const SparseState& psi, const WreathElement& k,
                                 const SpaceConfig& cfg);

// <psi|P(k)|psi> for psi a tensor of coset states, by the closed form
// prod_i (1 + overlap_i)/2 with overlap_i = 1 if k in H else 0 (right cosets
// Hk and H are equal or disjoint). reps.size() determines m.
double swap_expectation(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                        const WreathElement& k);

// n! (|G|/2)^m, the column count of the full k-vector dictionary.
u128 k_dictionary_columns(const SpaceConfig& cfg);

// Streams every canonical KVectorId exactly once, swap-major with labels in
// lexicographic order; restricted to one swap when swap_rank is given.
// Refuses configurations whose dictionary nonzeros exceed nnz_budget.
void for_each_k_vector_id(const SpaceConfig& cfg, std::optional<int> swap_rank,
                          const std::function<void(const KVectorId&)>& fn,
                          uint64_t nnz_budget = kDefaultNnzBudget);

}  // namespace wreathsim
