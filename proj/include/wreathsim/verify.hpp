#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wreathsim/decider.hpp"
#include "wreathsim/graph.hpp"
#include "wreathsim/projector.hpp"

namespace wreathsim {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

using CheckList = std::vector<CheckResult>;

bool all_passed(const CheckList& checks);

// Asymmetric (trivial automorphism group) connected non-isomorphic pair on
// 6 vertices; rigidity is re-verified by the suites, never assumed.
Graph builtin_rigid6a();
Graph builtin_rigid6b();
Graph builtin_p3();
Graph builtin_k3();

struct VerifyOptions {
    uint64_t seed = 7;
    EngineLimits limits;

    int group_n_exhaustive = 3;
    std::vector<int> group_n_sampled = {4, 5};
    int group_sample_pairs = 10'000;
    int swaps_n_max = 6;

    int gprime_n_min = 2;
    int gprime_n_max = 5;

    int dims_n = 3;
    int dims_m = 1;

    int swap_expectation_m_max = 5;
    std::optional<std::pair<Graph, Graph>> swap_expectation_pair;  // default: rigid6 pair

    int theorem1_pairs_n3 = 12;
    int theorem1_m_max_n3 = 3;
    int theorem1_pairs_n4 = 8;
    int theorem1_draws = 5;

    int theorem2_m = 3;
    int theorem2_draws = 10;
    int theorem2_m_extended = 4;

    int sampling_trials = 400;
};

// Exhaustive group axioms and embedding homomorphism at small n, sampled
// beyond; swap count and involution property.
CheckList suite_group(const VerifyOptions& opt = {});

// Closure of the swaps equals the equal-sign predicate set, index 2.
CheckList suite_gprime(const VerifyOptions& opt = {});

// Dimension formulas, per-swap dictionary rank and orthogonality, full
// dictionary rank bound (the measured dim H1).
CheckList suite_dims(const VerifyOptions& opt = {});

// Rigid nonisomorphic pair: every swap expectation is exactly 2^-m and the
// closed form matches the explicit sparse computation.
CheckList suite_swap_expectation(const VerifyOptions& opt = {});

// Isomorphic pairs measure p1 = 1 under every method in guard.
CheckList suite_theorem1(const VerifyOptions& opt = {});

// (P3,K3) at m=3 stays under n!/2^m via the streamed least-squares run.
CheckList suite_theorem2(const VerifyOptions& opt = {});

// Pairwise method agreement wherever at least two size guards admit the
// configuration.
CheckList suite_agreement(const VerifyOptions& opt = {});

// Simulated measurement frequencies match the computed p1.
CheckList suite_sampling(const VerifyOptions& opt = {});

}  // namespace wreathsim
