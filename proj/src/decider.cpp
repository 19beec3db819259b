#include "wreathsim/decider.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace wreathsim {

void ObservableSpec::validate() const {
    if (lambda0 == lambda1)
        throw std::invalid_argument("ObservableSpec: outcome labels must be distinct");
    if (m < 1) throw std::invalid_argument("ObservableSpec: m must be >= 1");
}

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::isomorphic: return "isomorphic";
        case Decision::not_isomorphic: return "not-isomorphic";
        case Decision::trivially_nonisomorphic: return "trivially-nonisomorphic";
    }
    return "?";
}

namespace {

uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// unbiased bounded draw; mt19937_64 output is standard-specified, so the
// stream is identical on every platform
uint64_t bounded(std::mt19937_64& rng, uint64_t n) {
    uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double theorem_bound(int n, int m) { return std::ldexp(static_cast<double>(factorial(n)), -m); }

void assert_theorems(bool isomorphic, double p1, double bound) {
    if (isomorphic && p1 < 1.0 - 1e-9)
        throw theorem_violation("isomorphic pair measured p1 = " + format_double(p1));
    if (!isomorphic && p1 > bound + 1e-9)
        throw theorem_violation("nonisomorphic pair measured p1 = " + format_double(p1) +
                                " above the bound " + format_double(bound));
}

// Cache key: per position, the smallest rank in the coset c_i H (identifies
// |c_i H| exactly), sorted because tensor-position order does not change p1
// (each H(k) is closed under position permutation).
std::vector<uint64_t> coset_cache_key(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                                      const GroupIndexer& gi) {
    std::vector<uint64_t> key;
    key.reserve(reps.size());
    for (const auto& c : reps) {
        uint64_t best = ~uint64_t{0};
        for (const auto& x : h.elements) best = std::min(best, gi.rank(compose(c, x)));
        key.push_back(best);
    }
    std::sort(key.begin(), key.end());
    return key;
}

}  // namespace

uint64_t trial_seed(uint64_t seed, int trial) {
    return splitmix64(seed ^ splitmix64(static_cast<uint64_t>(trial) + 1));
}

std::vector<uint64_t> sample_rep_ranks(const GroupIndexer& gi, int count, uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_rep_ranks: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<uint64_t> out(static_cast<size_t>(count));
    for (auto& r : out) r = bounded(rng, gi.order());
    return out;
}

std::vector<WreathElement> sample_coset_reps(const GroupIndexer& gi, int count, uint64_t seed) {
    std::vector<WreathElement> out;
    out.reserve(static_cast<size_t>(count));
    for (uint64_t r : sample_rep_ranks(gi, count, seed)) out.push_back(gi.unrank(r));
    return out;
}

SparseState prepare_psi(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                        const SpaceConfig& cfg, uint64_t support_budget) {
    return coset_tensor_state(reps, h, cfg, support_budget);
}

OutcomeDistribution outcome_distribution(const GraphPair& pair, int m,
                                         std::span<const WreathElement> reps,
                                         const EngineLimits& lim,
                                         std::optional<ProjectionMethod> forced) {
    if (pair.note == ConnectivityNote::trivially_nonisomorphic)
        throw std::invalid_argument("outcome_distribution: pair decided by connectivity");
    SpaceConfig cfg = SpaceConfig::create(pair.g1.n, m);
    HiddenSubgroup h = build_hidden_subgroup(pair);
    ProjectionMethod method = forced ? *forced : select_method(cfg, lim);

    P1Solver solver(cfg, lim, method);
    OutcomeDistribution out;
    out.report = solver.run(reps, h);
    out.p1 = out.report.p1;
    out.p0 = 1.0 - out.p1;
    out.bound = theorem_bound(cfg.n, m);
    out.contains_swap = contains_involutive_swap(h);
    out.union_bound = union_bound_check(reps, h, cfg);
    check_sandwich(out.p1, out.union_bound);
    assert_theorems(out.contains_swap, out.p1, out.bound);
    return out;
}

DecisionReport decide(const GraphPair& pair, int m, int trials, uint64_t seed,
                      const EngineLimits& lim, std::optional<ProjectionMethod> forced) {
    if (trials < 1) throw std::invalid_argument("decide: trials must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    DecisionReport rep;
    rep.n = pair.g1.n;
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    rep.bound = theorem_bound(pair.g1.n, m);

    if (pair.note == ConnectivityNote::trivially_nonisomorphic) {
        rep.decision = Decision::trivially_nonisomorphic;
        rep.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    SpaceConfig cfg = SpaceConfig::create(pair.g1.n, m);
    GroupIndexer gi(cfg.n);
    HiddenSubgroup h = build_hidden_subgroup(pair);
    rep.h_order = h.order();
    rep.contains_swap = contains_involutive_swap(h);
    ProjectionMethod method = forced ? *forced : select_method(cfg, lim);
    rep.method = method;

    P1Solver solver(cfg, lim, method);
    std::map<std::vector<uint64_t>, double> p1_cache;
    bool any_one = false;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(seed, t));
        TrialRecord rec;
        rec.rep_ranks.resize(static_cast<size_t>(m));
        std::vector<WreathElement> reps;
        reps.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            rec.rep_ranks[static_cast<size_t>(i)] = bounded(rng, gi.order());
            reps.push_back(gi.unrank(rec.rep_ranks[static_cast<size_t>(i)]));
        }
        auto key = coset_cache_key(reps, h, gi);
        auto it = p1_cache.find(key);
        if (it == p1_cache.end()) {
            double p1 = solver.run(reps, h).p1;
            check_sandwich(p1, union_bound_check(reps, h, cfg));
            assert_theorems(rep.contains_swap, p1, rep.bound);
            it = p1_cache.emplace(std::move(key), p1).first;
        }
        rec.p1 = it->second;
        rec.outcome_one = unit_double(rng) < rec.p1;
        any_one |= rec.outcome_one;
        rep.count_lambda1 += rec.outcome_one ? 1 : 0;
        rep.count_lambda0 += rec.outcome_one ? 0 : 1;
        rep.trial_records.push_back(std::move(rec));
    }
    rep.decision = any_one ? Decision::isomorphic : Decision::not_isomorphic;
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace wreathsim
