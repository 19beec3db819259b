#include "wreathsim/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace wreathsim {

SpaceConfig SpaceConfig::create(int n, int m) {
    if (m < 1) throw std::invalid_argument("SpaceConfig: m must be >= 1");
    GroupIndexer gi(n);
    u128 dim = 1;
    for (int i = 0; i < m; ++i) dim = checked_mul_u128(dim, gi.order());
    if (dim >> 127) throw std::overflow_error("SpaceConfig: dimension exceeds 2^127 - 1");
    return SpaceConfig{n, m, gi.order(), dim};
}

basis_index_t encode_basis_index(std::span<const uint64_t> ranks, const SpaceConfig& cfg) {
    if (static_cast<int>(ranks.size()) != cfg.m)
        throw std::invalid_argument("encode_basis_index: wrong tuple length");
    u128 idx = 0;
    for (uint64_t r : ranks) {
        if (r >= cfg.group_order) throw std::invalid_argument("encode_basis_index: rank out of range");
        idx = idx * cfg.group_order + r;
    }
    return idx;
}

std::vector<uint64_t> decode_basis_index(basis_index_t idx, const SpaceConfig& cfg) {
    if (idx >= cfg.dimension) throw std::invalid_argument("decode_basis_index: index out of range");
    std::vector<uint64_t> ranks(static_cast<size_t>(cfg.m));
    for (int i = cfg.m - 1; i >= 0; --i) {
        ranks[static_cast<size_t>(i)] = static_cast<uint64_t>(idx % cfg.group_order);
        idx /= cfg.group_order;
    }
    return ranks;
}

SparseState SparseState::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseState s;
    s.entries_.reserve(entries.size());
    for (const auto& [idx, amp] : entries) {
        if (!s.entries_.empty() && s.entries_.back().first == idx)
            s.entries_.back().second += amp;
        else
            s.entries_.emplace_back(idx, amp);
    }
    std::erase_if(s.entries_, [](const Entry& e) { return std::abs(e.second) < kZeroDrop; });
    return s;
}

double SparseState::norm_sq() const {
    long double acc = 0;
    for (const auto& [idx, amp] : entries_) acc += static_cast<long double>(amp) * amp;
    return static_cast<double>(acc);
}

double SparseState::norm() const { return std::sqrt(norm_sq()); }

double SparseState::amplitude(basis_index_t idx) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                               [](const Entry& e, basis_index_t v) { return e.first < v; });
    return (it != entries_.end() && it->first == idx) ? it->second : 0.0;
}

SparseState SparseState::scaled(double factor) const {
    std::vector<Entry> out = entries_;
    for (auto& e : out) e.second *= factor;
    return from_entries(std::move(out));
}

double inner_product(const SparseState& a, const SparseState& b) {
    long double acc = 0;
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea && ib != eb) {
        if (ia->first < ib->first)
            ++ia;
        else if (ib->first < ia->first)
            ++ib;
        else {
            acc += static_cast<long double>(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(acc);
}

SparseState add(const SparseState& a, const SparseState& b) {
    std::vector<SparseState::Entry> out;
    out.reserve(a.support_size() + b.support_size());
    out.insert(out.end(), a.entries().begin(), a.entries().end());
    out.insert(out.end(), b.entries().begin(), b.entries().end());
    return SparseState::from_entries(std::move(out));
}

double max_abs_difference(const SparseState& a, const SparseState& b) {
    double worst = 0;
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            worst = std::max(worst, std::abs(ia->second));
            ++ia;
        } else if (ia == ea || ib->first < ia->first) {
            worst = std::max(worst, std::abs(ib->second));
            ++ib;
        } else {
            worst = std::max(worst, std::abs(ia->second - ib->second));
            ++ia;
            ++ib;
        }
    }
    return worst;
}

SparseState uniform_superposition(std::span<const WreathElement> xs, const GroupIndexer& gi) {
    if (xs.empty()) throw std::invalid_argument("uniform_superposition: empty set");
    std::vector<SparseState::Entry> entries;
    entries.reserve(xs.size());
    double amp = 1.0 / std::sqrt(static_cast<double>(xs.size()));
    for (const auto& x : xs) entries.emplace_back(gi.rank(x), amp);
    std::sort(entries.begin(), entries.end());
    for (size_t i = 1; i < entries.size(); ++i)
        if (entries[i].first == entries[i - 1].first)
            throw std::invalid_argument("uniform_superposition: duplicate element");
    SparseState s = SparseState::from_entries(std::move(entries));
    return s;
}

SparseState coset_state(const WreathElement& c, const HiddenSubgroup& h, const GroupIndexer& gi) {
    std::vector<WreathElement> coset;
    coset.reserve(h.elements.size());
    for (const auto& x : h.elements) coset.push_back(compose(c, x));
    return uniform_superposition(coset, gi);
}

SparseState tensor_product(std::span<const SparseState> factors, const SpaceConfig& cfg,
                           uint64_t support_budget) {
    if (static_cast<int>(factors.size()) != cfg.m)
        throw std::invalid_argument("tensor_product: factor count must equal m");
    uint64_t total = 1;
    for (const auto& f : factors) {
        if (f.support_size() == 0) throw std::invalid_argument("tensor_product: empty factor");
        if (total > support_budget / f.support_size())
            throw resource_error("tensor_product: support would exceed budget of " +
                                 std::to_string(support_budget) + " nonzeros");
        total *= f.support_size();
    }
    std::vector<SparseState::Entry> cur{{0, 1.0}};
    for (const auto& f : factors) {
        std::vector<SparseState::Entry> next;
        next.reserve(cur.size() * f.support_size());
        for (const auto& [idx, amp] : cur)
            for (const auto& [r, a] : f.entries())
                next.emplace_back(idx * cfg.group_order + r, amp * a);
        cur = std::move(next);
    }
    return SparseState::from_entries(std::move(cur));
}

SparseState coset_tensor_state(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                               const SpaceConfig& cfg, uint64_t support_budget) {
    if (static_cast<int>(reps.size()) != cfg.m)
        throw std::invalid_argument("coset_tensor_state: need m representatives");
    GroupIndexer gi(cfg.n);
    std::vector<SparseState> factors;
    factors.reserve(reps.size());
    for (const auto& c : reps) factors.push_back(coset_state(c, h, gi));
    return tensor_product(factors, cfg, support_budget);
}

namespace {

// Right multiplication by k on ranks, memoized through a table when the
// group is small enough; otherwise composed per lookup.
class RightMult {
public:
    RightMult(const GroupIndexer& gi, const WreathElement& k) : gi_(gi), k_(k) {
        if (gi.order() <= 65536) {
            table_.resize(gi.order());
            for (uint64_t r = 0; r < gi.order(); ++r)
                table_[r] = gi.rank(compose(gi.unrank(r), k_));
        }
    }
    uint64_t operator()(uint64_t r) const {
        if (!table_.empty()) return table_[r];
        return gi_.rank(compose(gi_.unrank(r), k_));
    }

private:
    const GroupIndexer& gi_;
    WreathElement k_;
    std::vector<uint64_t> table_;
};

}  // namespace

SparseState apply_right_mult(const SparseState& psi, const WreathElement& k, uint64_t position_mask,
                             const SpaceConfig& cfg) {
    GroupIndexer gi(cfg.n);
    if (k.degree() != cfg.n) throw std::invalid_argument("apply_right_mult: degree mismatch");
    RightMult mult(gi, k);
    std::vector<SparseState::Entry> out;
    out.reserve(psi.support_size());
    for (const auto& [idx, amp] : psi.entries()) {
        auto digits = decode_basis_index(idx, cfg);
        for (int i = 0; i < cfg.m; ++i)
            if (position_mask >> i & 1) digits[static_cast<size_t>(i)] = mult(digits[static_cast<size_t>(i)]);
        out.emplace_back(encode_basis_index(digits, cfg), amp);
    }
    return SparseState::from_entries(std::move(out));
}

SparseState swap_projector_apply(const SparseState& psi, const WreathElement& k,
                                 const SpaceConfig& cfg) {
    if (!k.is_involutive_swap())
        throw std::invalid_argument("swap_projector_apply: k is not an involutive swap");
    GroupIndexer gi(cfg.n);
    RightMult mult(gi, k);
    double scale = std::ldexp(1.0, -cfg.m);  // 2^{-m}
    std::vector<SparseState::Entry> out;
    out.reserve(psi.support_size() << cfg.m);
    std::vector<uint64_t> digits, moved;
    for (const auto& [idx, amp] : psi.entries()) {
        digits = decode_basis_index(idx, cfg);
        moved = digits;
        for (auto& d : moved) d = mult(d);
        for (uint64_t mask = 0; mask < (uint64_t{1} << cfg.m); ++mask) {
            u128 v = 0;
            for (int i = 0; i < cfg.m; ++i) {
                uint64_t d = (mask >> i & 1) ? moved[static_cast<size_t>(i)] : digits[static_cast<size_t>(i)];
                v = v * cfg.group_order + d;
            }
            out.emplace_back(v, amp * scale);
        }
    }
    return SparseState::from_entries(std::move(out));
}

double swap_expectation(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                        const WreathElement& k) {
    if (!k.is_involutive_swap())
        throw std::invalid_argument("swap_expectation: k is not an involutive swap");
    int m = static_cast<int>(reps.size());
    if (m < 1) throw std::invalid_argument("swap_expectation: need at least one factor");
    // <c_iH|c_iHk> is 1 when Hk = H (k in H) and 0 otherwise; the
    // per-position factor (1 + overlap)/2 is rep-independent.
    return h.contains(k) ? 1.0 : std::ldexp(1.0, -m);
}

u128 k_dictionary_columns(const SpaceConfig& cfg) {
    u128 cols = factorial(cfg.n);
    for (int i = 0; i < cfg.m; ++i) cols = checked_mul_u128(cols, cfg.group_order / 2);
    return cols;
}

void for_each_k_vector_id(const SpaceConfig& cfg, std::optional<int> swap_rank,
                          const std::function<void(const KVectorId&)>& fn, uint64_t nnz_budget) {
    u128 nnz = checked_mul_u128(k_dictionary_columns(cfg), u128{1} << cfg.m);
    if (nnz > nnz_budget)
        throw resource_error("k-vector dictionary needs " + to_string_u128(nnz) +
                             " nonzeros, over the budget of " + std::to_string(nnz_budget));
    GroupIndexer gi(cfg.n);
    auto swaps = involutive_swaps(cfg.n);
    int k_begin = swap_rank.value_or(0);
    int k_end = swap_rank ? *swap_rank + 1 : static_cast<int>(swaps.size());
    if (k_begin < 0 || k_end > static_cast<int>(swaps.size()))
        throw std::invalid_argument("for_each_k_vector_id: swap rank out of range");
    for (int ki = k_begin; ki < k_end; ++ki) {
        RightMult mult(gi, swaps[static_cast<size_t>(ki)]);
        std::vector<uint64_t> labels;
        labels.reserve(gi.order() / 2);
        for (uint64_t r = 0; r < gi.order(); ++r)
            if (r < mult(r)) labels.push_back(r);
        KVectorId id;
        id.swap_rank = ki;
        id.coset_labels.assign(static_cast<size_t>(cfg.m), labels.front());
        std::vector<size_t> pos(static_cast<size_t>(cfg.m), 0);
        for (;;) {
            fn(id);
            int i = cfg.m - 1;
            for (; i >= 0; --i) {
                if (++pos[static_cast<size_t>(i)] < labels.size()) {
                    id.coset_labels[static_cast<size_t>(i)] = labels[pos[static_cast<size_t>(i)]];
                    break;
                }
                pos[static_cast<size_t>(i)] = 0;
                id.coset_labels[static_cast<size_t>(i)] = labels.front();
            }
            if (i < 0) break;
        }
    }
}

SparseState k_vector(const KVectorId& id, const SpaceConfig& cfg) {
    GroupIndexer gi(cfg.n);
    auto swaps = involutive_swaps(cfg.n);
    if (id.swap_rank < 0 || id.swap_rank >= static_cast<int>(swaps.size()))
        throw std::invalid_argument("k_vector: swap rank out of range");
    if (static_cast<int>(id.coset_labels.size()) != cfg.m)
        throw std::invalid_argument("k_vector: label count must equal m");
    const WreathElement& k = swaps[static_cast<size_t>(id.swap_rank)];
    std::vector<uint64_t> moved(id.coset_labels.size());
    for (size_t i = 0; i < id.coset_labels.size(); ++i) {
        uint64_t l = id.coset_labels[i];
        if (l >= gi.order()) throw std::invalid_argument("k_vector: label out of range");
        moved[i] = gi.rank(compose(gi.unrank(l), k));
        if (moved[i] < l)
            throw std::invalid_argument("k_vector: non-canonical coset label");
    }
    double amp = std::ldexp(1.0, 0) / std::sqrt(std::ldexp(1.0, cfg.m));  // 2^{-m/2}
    std::vector<SparseState::Entry> out;
    out.reserve(size_t{1} << cfg.m);
    for (uint64_t mask = 0; mask < (uint64_t{1} << cfg.m); ++mask) {
        u128 v = 0;
        for (int i = 0; i < cfg.m; ++i) {
            uint64_t d = (mask >> (cfg.m - 1 - i) & 1) ? moved[static_cast<size_t>(i)]
                                                       : id.coset_labels[static_cast<size_t>(i)];
            v = v * cfg.group_order + d;
        }
        out.emplace_back(v, amp);
    }
    return SparseState::from_entries(std::move(out));
}

}  // namespace wreathsim
