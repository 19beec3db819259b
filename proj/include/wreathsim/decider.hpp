#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wreathsim/graph.hpp"
#include "wreathsim/projector.hpp"
#include "wreathsim/state_space.hpp"

namespace wreathsim {

// Two-outcome observable labels; the defaults make outcomes plain bits.
struct ObservableSpec {
    double lambda0 = 0.0;
    double lambda1 = 1.0;
    int m = 1;

    void validate() const;  // lambda0 != lambda1
};

enum class Decision { isomorphic, not_isomorphic, trivially_nonisomorphic };
const char* decision_name(Decision d);

// count uniform draws from G via unrank; deterministic for a given seed on
// every platform (rejection sampling over mt19937_64, no library
// distributions involved).
std::vector<WreathElement> sample_coset_reps(const GroupIndexer& gi, int count, uint64_t seed);
std::vector<uint64_t> sample_rep_ranks(const GroupIndexer& gi, int count, uint64_t seed);

// Deterministic per-trial sub-seed.
uint64_t trial_seed(uint64_t seed, int trial);

SparseState prepare_psi(std::span<const WreathElement> reps, const HiddenSubgroup& h,
                        const SpaceConfig& cfg, uint64_t support_budget = kDefaultNnzBudget);

struct OutcomeDistribution {
    double p0 = 0.0;
    double p1 = 0.0;
    double bound = 0.0;  // n!/2^m
    bool contains_swap = false;
    UnionBound union_bound;
    ProjectionReport report;
};

// Computes p1 with the requested (or auto-selected) method and asserts the
// two theorems against the classical ground truth; a breach beyond 1e-9
// throws theorem_violation (it would be a bug, not new mathematics).
OutcomeDistribution outcome_distribution(const GraphPair& pair, int m,
                                         std::span<const WreathElement> reps,
                                         const EngineLimits& lim = {},
                                         std::optional<ProjectionMethod> forced = {});

struct TrialRecord {
    std::vector<uint64_t> rep_ranks;
    double p1 = 0.0;
    bool outcome_one = false;
};

struct DecisionReport {
    Decision decision = Decision::not_isomorphic;
    int n = 0;
    int m = 0;
    int trials = 0;
    uint64_t seed = 0;
    double bound = 0.0;
    uint64_t h_order = 0;
    bool contains_swap = false;
    ProjectionMethod method = ProjectionMethod::dictionary_least_squares;
    uint64_t count_lambda1 = 0;
    uint64_t count_lambda0 = 0;
    std::vector<TrialRecord> trial_records;
    double runtime_seconds = 0.0;
};

// Per trial: fresh uniform representatives, p1 from the engine, outcome
// lambda1 sampled with probability p1. "isomorphic" is reported iff some
// trial measures lambda1 (sound: isomorphic inputs always measure lambda1;
// nonisomorphic ones trip it with probability <= n!/2^m per trial). Trials
// are independent simulated measurements on freshly prepared states; p1 is
// cached by the canonical coset labels of the prepared state, which
// identify it up to tensor-position order.
DecisionReport decide(const GraphPair& pair, int m, int trials, uint64_t seed,
                      const EngineLimits& lim = {}, std::optional<ProjectionMethod> forced = {});

}  // namespace wreathsim
