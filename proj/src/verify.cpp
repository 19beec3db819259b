#include "wreathsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "wreathsim/exact.hpp"
#include "wreathsim/gprime.hpp"

namespace wreathsim {

bool all_passed(const CheckList& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Graph builtin_rigid6a() {
    return make_graph(6, {{0, 2}, {1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 5}});
}

Graph builtin_rigid6b() {
    return make_graph(6, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {2, 3}, {3, 5}});
}

Graph builtin_p3() { return make_graph(3, {{0, 1}, {1, 2}}); }

Graph builtin_k3() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Graph random_connected_graph(int n, std::mt19937_64& rng) {
    for (;;) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) edges.emplace_back(u, v);
        Graph g = make_graph(n, std::move(edges));
        if (g.is_connected()) return g;
    }
}

HiddenSubgroup subgroup_from_generators(int n, std::vector<WreathElement> gens) {
    SubgroupClosure c = generate_closure(gens, n);
    return HiddenSubgroup::from_elements(n, std::move(c.elements));
}

}  // namespace

CheckList suite_group(const VerifyOptions& opt) {
    CheckList out;
    {
        int n = opt.group_n_exhaustive;
        GroupIndexer gi(n);
        bool ok = true;
        for (uint64_t r = 0; r < gi.order() && ok; ++r)
            ok = gi.rank(gi.unrank(r)) == r;
        ok = ok && gi.unrank(0).is_identity();
        out.push_back({"rank/unrank bijection n=" + std::to_string(n), ok,
                       "order " + std::to_string(gi.order())});
    }
    {
        int n = opt.group_n_exhaustive;
        GroupIndexer gi(n);
        std::vector<WreathElement> all;
        all.reserve(gi.order());
        for (uint64_t r = 0; r < gi.order(); ++r) all.push_back(gi.unrank(r));
        bool hom = true;
        std::set<uint64_t> embeds;
        for (const auto& x : all) embeds.insert(embed_s2n(x).lehmer_rank());
        bool injective = embeds.size() == all.size();
        for (const auto& x : all)
            for (const auto& y : all)
                if (!(embed_s2n(compose(x, y)) == embed_s2n(x).compose(embed_s2n(y)))) {
                    hom = false;
                    break;
                }
        out.push_back({"embedding homomorphism n=" + std::to_string(n) + " exhaustive",
                       hom && injective,
                       std::to_string(gi.order() * gi.order()) + " pairs, injective=" +
                           (injective ? "yes" : "no")});
        WreathElement id = WreathElement::identity(n);
        bool axioms = true;
        for (const auto& x : all) {
            if (!(compose(id, x) == x) || !(compose(x, id) == x)) axioms = false;
            if (!compose(x, inverse(x)).is_identity() || !compose(inverse(x), x).is_identity())
                axioms = false;
        }
        for (const auto& x : all) {
            if (!axioms) break;
            for (const auto& y : all) {
                WreathElement xy = compose(x, y);
                for (const auto& z : all) {
                    if (!(compose(xy, z) == compose(x, compose(y, z)))) {
                        axioms = false;
                        break;
                    }
                }
                if (!axioms) break;
            }
        }
        out.push_back({"group axioms n=" + std::to_string(n) + " exhaustive", axioms,
                       "identity, inverses, associativity on all triples"});
    }
    for (int n : opt.group_n_sampled) {
        GroupIndexer gi(n);
        std::mt19937_64 rng(opt.seed ^ static_cast<uint64_t>(n) << 32);
        bool ok = true;
        for (int t = 0; t < opt.group_sample_pairs && ok; ++t) {
            WreathElement x = gi.unrank(rng() % gi.order());
            WreathElement y = gi.unrank(rng() % gi.order());
            ok = embed_s2n(compose(x, y)) == embed_s2n(x).compose(embed_s2n(y));
        }
        out.push_back({"embedding homomorphism n=" + std::to_string(n) + " sampled", ok,
                       std::to_string(opt.group_sample_pairs) + " pairs"});
    }
    {
        bool ok = true;
        std::string detail;
        for (int n = 1; n <= opt.swaps_n_max; ++n) {
            auto swaps = involutive_swaps(n);
            GroupIndexer gi(n);
            std::set<uint64_t> distinct;
            for (const auto& k : swaps) {
                distinct.insert(gi.rank(k));
                if (!compose(k, k).is_identity() || !k.is_involutive_swap()) ok = false;
            }
            if (swaps.size() != factorial(n) || distinct.size() != swaps.size()) ok = false;
            detail += (n > 1 ? " " : "") + std::to_string(swaps.size());
        }
        out.push_back({"involutive swaps n<=" + std::to_string(opt.swaps_n_max), ok,
                       "counts: " + detail});
    }
    return out;
}

CheckList suite_gprime(const VerifyOptions& opt) {
    CheckList out;
    for (int n = opt.gprime_n_min; n <= opt.gprime_n_max; ++n) {
        CharacterizationReport rep = verify_characterization(n);
        bool pass = rep.match && (n == 1 || rep.index == 2);
        out.push_back({"G' characterization n=" + std::to_string(n), pass,
                       "closure " + std::to_string(rep.closure_order) + " of " +
                           std::to_string(rep.group_order) + ", index " +
                           std::to_string(rep.index) + ", predicate match=" +
                           (rep.match ? "yes" : "no")});
    }
    return out;
}

CheckList suite_dims(const VerifyOptions& opt) {
    CheckList out;
    {
        bool ok = true;
        int checked = 0;
        for (int n = 1; n <= 8; ++n) {
            for (int m = 1; m <= 4; ++m) {
                u128 via_order, via_formula;
                try {
                    via_order = SpaceConfig::create(n, m).dimension;
                    u128 f = factorial(n);
                    via_formula = u128{1} << m;
                    for (int i = 0; i < 2 * m; ++i) via_formula = checked_mul_u128(via_formula, f);
                } catch (const std::overflow_error&) {
                    continue;
                }
                ++checked;
                if (via_order != via_formula) ok = false;
            }
        }
        out.push_back({"dimension formula 2^m (n!)^{2m}", ok,
                       std::to_string(checked) + " (n,m) combinations"});
    }
    SpaceConfig cfg = SpaceConfig::create(opt.dims_n, opt.dims_m);
    {
        DenseProjector per_swap(cfg, opt.limits, {0});
        u128 expect = 1;
        for (int i = 0; i < cfg.m; ++i) expect = checked_mul_u128(expect, cfg.group_order / 2);
        bool rank_ok = static_cast<u128>(per_swap.rank()) == expect;

        std::vector<SparseState> vecs;
        for_each_k_vector_id(cfg, 0, [&](const KVectorId& id) { vecs.push_back(k_vector(id, cfg)); });
        double worst = 0;
        for (size_t i = 0; i < vecs.size(); ++i)
            for (size_t j = i; j < vecs.size(); ++j) {
                double want = i == j ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(inner_product(vecs[i], vecs[j]) - want));
            }
        out.push_back({"per-swap dictionary rank (n=" + std::to_string(cfg.n) +
                           ",m=" + std::to_string(cfg.m) + ")",
                       rank_ok && worst <= 1e-12,
                       "rank " + std::to_string(per_swap.rank()) + " = (|G|/2)^m = " +
                           to_string_u128(expect) + ", max Gram deviation " + fmt(worst)});
    }
    {
        DenseProjector full(cfg, opt.limits);
        u128 bound = k_dictionary_columns(cfg);
        bool ok = static_cast<u128>(full.rank()) <= bound;
        out.push_back({"measured dim H1 (n=" + std::to_string(cfg.n) + ",m=" +
                           std::to_string(cfg.m) + ")",
                       ok,
                       "rank " + std::to_string(full.rank()) + " <= bound " +
                           to_string_u128(bound) + " (dimension " + to_string_u128(cfg.dimension) +
                           ")"});
    }
    return out;
}

CheckList suite_swap_expectation(const VerifyOptions& opt) {
    CheckList out;
    Graph a = opt.swap_expectation_pair ? opt.swap_expectation_pair->first : builtin_rigid6a();
    Graph b = opt.swap_expectation_pair ? opt.swap_expectation_pair->second : builtin_rigid6b();
    size_t aut_a = automorphisms(a).size();
    size_t aut_b = automorphisms(b).size();
    bool noniso = isomorphisms(a, b).empty();
    bool prepared = a.is_connected() && b.is_connected() && aut_a == 1 && aut_b == 1 && noniso;
    out.push_back({"fixture pair rigidity", prepared,
                   "|Aut|=" + std::to_string(aut_a) + "," + std::to_string(aut_b) +
                       ", connected, non-isomorphic=" + (noniso ? "yes" : "no")});
    if (!prepared) return out;

    GraphPair pair = normalize_pair(a, b);
    HiddenSubgroup h = build_hidden_subgroup(pair);
    GroupIndexer gi(a.n);
    auto swaps = involutive_swaps(a.n);
    for (int m = 1; m <= opt.swap_expectation_m_max; ++m) {
        SpaceConfig cfg = SpaceConfig::create(a.n, m);
        auto reps = sample_coset_reps(gi, m, trial_seed(opt.seed, m));
        SparseState psi = coset_tensor_state(reps, h, cfg);
        double expect = std::ldexp(1.0, -m);
        double worst_closed = 0, worst_explicit = 0;
        for (const auto& k : swaps) {
            double closed = swap_expectation(reps, h, k);
            worst_closed = std::max(worst_closed, std::abs(closed - expect));
            double explicit_val = inner_product(psi, swap_projector_apply(psi, k, cfg));
            worst_explicit = std::max(worst_explicit, std::abs(closed - explicit_val));
        }
        bool pass = worst_closed <= 1e-12 && worst_explicit <= 1e-12;
        out.push_back({"per-swap expectation m=" + std::to_string(m), pass,
                       std::to_string(swaps.size()) + " swaps, max |closed - 2^-m| = " +
                           fmt(worst_closed) + ", max |closed - explicit| = " +
                           fmt(worst_explicit)});
    }
    return out;
}

CheckList suite_theorem1(const VerifyOptions& opt) {
    CheckList out;
    std::mt19937_64 rng(opt.seed);
    struct Config {
        int n, m, pairs;
    };
    std::vector<Config> configs;
    for (int m = 1; m <= opt.theorem1_m_max_n3; ++m) configs.push_back({3, m, opt.theorem1_pairs_n3});
    configs.push_back({4, 1, opt.theorem1_pairs_n4});

    std::map<std::pair<int, int>, P1Solver> solvers;
    std::map<int, std::vector<std::pair<Graph, Graph>>> pair_pool;
    for (int n : {3, 4}) {
        int want = std::max(opt.theorem1_pairs_n3, opt.theorem1_pairs_n4);
        for (int i = 0; i < want; ++i) {
            Graph g = random_connected_graph(n, rng);
            Perm p = Perm::from_lehmer_rank(n, rng() % factorial(n));
            pair_pool[n].emplace_back(g, relabel(g, p));
        }
    }

    int draw_counter = 0;
    for (const auto& c : configs) {
        SpaceConfig cfg = SpaceConfig::create(c.n, c.m);
        ProjectionMethod method = select_method(cfg, opt.limits);
        auto solver = solvers.try_emplace({c.n, c.m}, cfg, opt.limits, method).first;
        GroupIndexer gi(c.n);
        double min_p1 = 1.0;
        int runs = 0;
        bool ok = true;
        for (int i = 0; i < c.pairs && ok; ++i) {
            const auto& [ga, gb] = pair_pool[c.n][static_cast<size_t>(i)];
            GraphPair pair = normalize_pair(ga, gb);
            HiddenSubgroup h = build_hidden_subgroup(pair);
            if (!contains_involutive_swap(h)) {
                ok = false;  // relabeled pair must contain a swap
                break;
            }
            for (int d = 0; d < opt.theorem1_draws; ++d) {
                auto reps = sample_coset_reps(gi, c.m, trial_seed(opt.seed, ++draw_counter));
                double p1 = solver->second.run(reps, h).p1;
                min_p1 = std::min(min_p1, p1);
                ++runs;
            }
        }
        bool pass = ok && min_p1 >= 1.0 - 1e-9;
        out.push_back({"theorem 1 (n=" + std::to_string(c.n) + ",m=" + std::to_string(c.m) + ") " +
                           method_name(method),
                       pass,
                       std::to_string(c.pairs) + " pairs x " + std::to_string(opt.theorem1_draws) +
                           " draws (" + std::to_string(runs) + " runs), min p1 = 1 - " +
                           fmt(1.0 - min_p1)});
    }
    return out;
}

CheckList suite_theorem2(const VerifyOptions& opt) {
    CheckList out;
    GraphPair pair = normalize_pair(builtin_p3(), builtin_k3());
    HiddenSubgroup h = build_hidden_subgroup(pair);
    GroupIndexer gi(3);
    {
        int m = opt.theorem2_m;
        SpaceConfig cfg = SpaceConfig::create(3, m);
        double bound = std::ldexp(static_cast<double>(factorial(3)), -m);
        KDictionary dict(cfg, opt.limits.nnz_budget);
        double max_p1 = 0, min_p1 = 1;
        bool all_converged = true;
        uint64_t max_iters = 0;
        for (int d = 0; d < opt.theorem2_draws; ++d) {
            auto reps = sample_coset_reps(gi, m, trial_seed(opt.seed, 5000 + d));
            SparseState psi = coset_tensor_state(reps, h, cfg, opt.limits.nnz_budget);
            ProjectionReport rep = p1_least_squares(dict, psi, opt.limits);
            max_p1 = std::max(max_p1, rep.p1);
            min_p1 = std::min(min_p1, rep.p1);
            all_converged = all_converged && rep.converged;
            max_iters = std::max(max_iters, rep.iterations);
        }
        bool pass = all_converged && max_p1 <= bound + 1e-9;
        out.push_back({"theorem 2 (P3,K3) m=" + std::to_string(m), pass,
                       std::to_string(opt.theorem2_draws) + " draws over " +
                           std::to_string(dict.columns()) + " columns in dimension " +
                           to_string_u128(cfg.dimension) + ", p1 in [" + fmt(min_p1) + ", " +
                           fmt(max_p1) + "] <= " + fmt(bound) + ", max " +
                           std::to_string(max_iters) + " iterations"});
    }
    {
        int m = opt.theorem2_m_extended;
        SpaceConfig cfg = SpaceConfig::create(3, m);
        double bound = std::ldexp(static_cast<double>(factorial(3)), -m);
        u128 nnz = checked_mul_u128(k_dictionary_columns(cfg), u128{1} << m);
        if (nnz <= opt.limits.nnz_budget) {
            auto reps = sample_coset_reps(gi, m, trial_seed(opt.seed, 6000));
            SparseState psi = coset_tensor_state(reps, h, cfg, opt.limits.nnz_budget);
            ProjectionReport rep = p1_least_squares(psi, cfg, opt.limits);
            out.push_back({"theorem 2 (P3,K3) m=" + std::to_string(m), rep.p1 <= bound + 1e-9,
                           "p1 = " + fmt(rep.p1) + " <= " + fmt(bound)});
        } else {
            auto reps = sample_coset_reps(gi, m, trial_seed(opt.seed, 6000));
            UnionBound ub = union_bound_check(reps, h, cfg);
            bool pass = std::abs(ub.sum - bound) <= 1e-12;
            out.push_back({"theorem 2 (P3,K3) m=" + std::to_string(m), pass,
                           "dictionary needs " + to_string_u128(nnz) +
                               " nonzeros (over budget); union bound sum = " + fmt(ub.sum) +
                               " = n!/2^m"});
        }
    }
    return out;
}

CheckList suite_agreement(const VerifyOptions& opt) {
    CheckList out;
    auto run_config = [&](const SpaceConfig& cfg, const std::vector<HiddenSubgroup>& subgroups,
                          const std::string& label) {
        GroupIndexer gi(cfg.n);
        ExactProjector exact(cfg, opt.limits);
        DenseProjector dense(cfg, opt.limits);
        KDictionary dict(cfg, opt.limits.nnz_budget);
        double worst = 0;
        int instances = 0;
        int seed_counter = 9000 + cfg.n * 100 + cfg.m;
        for (const auto& h : subgroups) {
            std::vector<std::vector<WreathElement>> rep_sets;
            rep_sets.emplace_back(static_cast<size_t>(cfg.m), WreathElement::identity(cfg.n));
            rep_sets.push_back(sample_coset_reps(gi, cfg.m, trial_seed(opt.seed, seed_counter++)));
            rep_sets.push_back(sample_coset_reps(gi, cfg.m, trial_seed(opt.seed, seed_counter++)));
            for (const auto& reps : rep_sets) {
                double pe = exact.p1(reps, h).value;
                SparseState psi = coset_tensor_state(reps, h, cfg, opt.limits.nnz_budget);
                double pd = dense.project(psi).p1;
                ProjectionReport pl = p1_least_squares(dict, psi, opt.limits);
                worst = std::max({worst, std::abs(pe - pd), std::abs(pe - pl.p1),
                                  std::abs(pd - pl.p1)});
                ++instances;
            }
        }
        out.push_back({"method agreement " + label, worst <= 1e-8,
                       std::to_string(instances) + " instances, max pairwise |diff| = " +
                           fmt(worst)});
    };

    WreathElement e2 = WreathElement::identity(2);
    Perm t = Perm::from_images({1, 0});
    Perm i2 = Perm::identity(2);
    std::vector<HiddenSubgroup> subgroups2 = {
        HiddenSubgroup::from_elements(2, {e2}),
        subgroup_from_generators(2, {WreathElement{t, t, 0}}),
        subgroup_from_generators(2, {WreathElement{t, i2, 0}}),
        subgroup_from_generators(2, {WreathElement{i2, i2, 1}}),
    };
    for (int m = 1; m <= 3; ++m)
        run_config(SpaceConfig::create(2, m), subgroups2, "(n=2,m=" + std::to_string(m) + ")");

    std::vector<HiddenSubgroup> subgroups3 = {
        build_hidden_subgroup(normalize_pair(builtin_p3(), builtin_k3())),
        build_hidden_subgroup(normalize_pair(builtin_p3(), builtin_p3())),
        build_hidden_subgroup(normalize_pair(builtin_k3(), builtin_k3())),
    };
    run_config(SpaceConfig::create(3, 1), subgroups3, "(n=3,m=1)");
    return out;
}

CheckList suite_sampling(const VerifyOptions& opt) {
    CheckList out;
    GraphPair pair = normalize_pair(builtin_p3(), builtin_k3());
    DecisionReport rep = decide(pair, 3, opt.sampling_trials, opt.seed, opt.limits);
    double mean_p1 = 0;
    for (const auto& t : rep.trial_records) mean_p1 += t.p1;
    mean_p1 /= static_cast<double>(rep.trial_records.size());
    double freq =
        static_cast<double>(rep.count_lambda1) / static_cast<double>(opt.sampling_trials);
    double sigma = std::sqrt(mean_p1 * (1.0 - mean_p1) / static_cast<double>(opt.sampling_trials));
    bool within = std::abs(freq - mean_p1) <= 3.0 * sigma;
    bool under_bound = freq <= 0.75 + 0.05;
    out.push_back({"sampling consistency (P3,K3) m=3", within && under_bound,
                   std::to_string(opt.sampling_trials) + " measurements, lambda1 frequency " +
                       fmt(freq) + " vs p1 " + fmt(mean_p1) + " (3 sigma = " + fmt(3 * sigma) +
                       "), decision " + decision_name(rep.decision) + ", " +
                       fmt(rep.runtime_seconds) + "s"});
    return out;
}

}  // namespace wreathsim
