// wreathsim: exact desk-scale simulator of the two-outcome swap observable
// for graph isomorphism over coset states of S_n wr S_2.
//
// Commands: decide, prob, verify, swaps, gprime, autgroup.
// Exit codes: 0 isomorphic / success, 1 not isomorphic / suite failure,
// 2 usage or format error, 3 resource-guard refusal, 4 internal invariant
// breach (would indicate a bug, not new mathematics).

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "wreathsim/common.hpp"
#include "wreathsim/decider.hpp"
#include "wreathsim/exact.hpp"
#include "wreathsim/gprime.hpp"
#include "wreathsim/graph.hpp"
#include "wreathsim/projector.hpp"
#include "wreathsim/verify.hpp"

using namespace wreathsim;

namespace {

// Flat JSON with caller-controlled field order and %.17g floats, so
// identical inputs yield byte-identical output.
class JsonWriter {
public:
    JsonWriter& raw(const std::string& key, const std::string& value) {
        sep();
        buf_ += '"';
        buf_ += key;
        buf_ += "\":";
        buf_ += value;
        return *this;
    }
    JsonWriter& num(const std::string& key, uint64_t v) { return raw(key, std::to_string(v)); }
    JsonWriter& num(const std::string& key, int v) { return raw(key, std::to_string(v)); }
    JsonWriter& num(const std::string& key, u128 v) { return raw(key, to_string_u128(v)); }
    JsonWriter& num(const std::string& key, double v) { return raw(key, format_double(v)); }
    JsonWriter& boolean(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
    JsonWriter& str(const std::string& key, const std::string& v) {
        return raw(key, "\"" + v + "\"");
    }
    JsonWriter& array(const std::string& key, const std::vector<uint64_t>& vs) {
        std::string a = "[";
        for (size_t i = 0; i < vs.size(); ++i) {
            if (i) a += ',';
            a += std::to_string(vs[i]);
        }
        return raw(key, a + "]");
    }
    std::string done() { return buf_ + "}"; }

private:
    void sep() { buf_ += buf_.size() == 1 ? "" : ","; }
    std::string buf_ = "{";
};

struct CommonOpts {
    std::string g1_path, g2_path;
    int m = 1;
    int trials = 1;
    uint64_t seed = 0;
    std::string method = "auto";
    std::string format = "human";
    uint64_t budget_nnz = kDefaultNnzBudget;
    double tol = 1e-10;
    int n = 0;
    std::string suite = "all";
};

void add_engine_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--method", o.method, "auto | exact | dense | lsq")
        ->check(CLI::IsMember({"auto", "exact", "dense", "lsq"}));
    cmd->add_option("--budget-nnz", o.budget_nnz, "materialization cap (nonzeros)");
    cmd->add_option("--tol", o.tol, "least-squares gradient tolerance");
}

EngineLimits make_limits(const CommonOpts& o) {
    EngineLimits lim;
    lim.nnz_budget = o.budget_nnz;
    lim.lsq_tol = o.tol;
    return lim;
}

std::optional<ProjectionMethod> forced_method(const CommonOpts& o) {
    if (o.method == "auto") return std::nullopt;
    return method_from_name(o.method);
}

GraphPair load_pair(const CommonOpts& o) {
    Graph g1 = Graph::parse_file(o.g1_path);
    Graph g2 = o.g2_path.empty() ? g1 : Graph::parse_file(o.g2_path);
    return normalize_pair(std::move(g1), std::move(g2));
}

int cmd_decide(const CommonOpts& o) {
    GraphPair pair = load_pair(o);
    DecisionReport rep = decide(pair, o.m, o.trials, o.seed, make_limits(o), forced_method(o));
    if (o.format == "json") {
        JsonWriter w;
        w.str("decision", decision_name(rep.decision))
            .num("n", rep.n)
            .num("m", rep.m)
            .num("trials", rep.trials)
            .num("seed", rep.seed)
            .num("bound", rep.bound)
            .num("h_order", rep.h_order)
            .boolean("contains_swap", rep.contains_swap)
            .str("method", method_name(rep.method))
            .num("count_lambda1", rep.count_lambda1)
            .num("count_lambda0", rep.count_lambda0);
        std::string trials_json = "[";
        for (size_t i = 0; i < rep.trial_records.size(); ++i) {
            const auto& t = rep.trial_records[i];
            if (i) trials_json += ',';
            JsonWriter tw;
            tw.array("reps", t.rep_ranks).num("p1", t.p1).num("outcome", t.outcome_one ? 1 : 0);
            trials_json += tw.done();
        }
        w.raw("trial_records", trials_json + "]");
        std::printf("%s\n", w.done().c_str());
    } else if (o.format == "csv") {
        std::printf("trial,rep_ranks,p1,outcome\n");
        for (size_t i = 0; i < rep.trial_records.size(); ++i) {
            const auto& t = rep.trial_records[i];
            std::string reps;
            for (size_t j = 0; j < t.rep_ranks.size(); ++j) {
                if (j) reps += ';';
                reps += std::to_string(t.rep_ranks[j]);
            }
            std::printf("%zu,%s,%s,%d\n", i, reps.c_str(), format_double(t.p1).c_str(),
                        t.outcome_one ? 1 : 0);
        }
    } else {
        std::printf("decision: %s\n", decision_name(rep.decision));
        if (rep.decision != Decision::trivially_nonisomorphic) {
            std::printf("trials: %d, lambda1 outcomes: %llu, lambda0 outcomes: %llu\n", rep.trials,
                        static_cast<unsigned long long>(rep.count_lambda1),
                        static_cast<unsigned long long>(rep.count_lambda0));
            std::printf("bound n!/2^m: %s, |H|: %llu, method: %s\n",
                        format_double(rep.bound).c_str(),
                        static_cast<unsigned long long>(rep.h_order), method_name(rep.method));
            for (size_t i = 0; i < rep.trial_records.size() && i < 10; ++i)
                std::printf("  trial %zu: p1 = %s, outcome = lambda%d\n", i,
                            format_double(rep.trial_records[i].p1).c_str(),
                            rep.trial_records[i].outcome_one ? 1 : 0);
            if (rep.trial_records.size() > 10)
                std::printf("  ... %zu more trials\n", rep.trial_records.size() - 10);
        } else {
            std::printf("connectivity differs after normalization; no simulation needed\n");
        }
        std::printf("runtime: %.3fs\n", rep.runtime_seconds);
    }
    return rep.decision == Decision::isomorphic ? 0 : 1;
}

int cmd_prob(const CommonOpts& o) {
    GraphPair pair = load_pair(o);
    if (pair.note == ConnectivityNote::trivially_nonisomorphic) {
        std::fprintf(stderr,
                     "pair is trivially non-isomorphic (connectivity differs); no observable "
                     "computed\n");
        return 1;
    }
    SpaceConfig cfg = SpaceConfig::create(pair.g1.n, o.m);
    GroupIndexer gi(cfg.n);
    auto reps = sample_coset_reps(gi, o.m, o.seed);
    OutcomeDistribution od = outcome_distribution(pair, o.m, reps, make_limits(o), forced_method(o));
    std::vector<uint64_t> rep_ranks;
    for (const auto& c : reps) rep_ranks.push_back(gi.rank(c));
    HiddenSubgroup h = build_hidden_subgroup(pair);

    if (o.format == "csv") {
        std::printf(
            "n,m,group_order,dimension,h_order,contains_swap,p1,p0,bound,sum_swap_expect,"
            "max_swap_expect,method,residual,iterations,seed\n");
        std::printf("%d,%d,%llu,%s,%llu,%d,%s,%s,%s,%s,%s,%s,%s,%llu,%llu\n", cfg.n, cfg.m,
                    static_cast<unsigned long long>(cfg.group_order),
                    to_string_u128(cfg.dimension).c_str(),
                    static_cast<unsigned long long>(h.order()), od.contains_swap ? 1 : 0,
                    format_double(od.p1).c_str(), format_double(od.p0).c_str(),
                    format_double(od.bound).c_str(), format_double(od.union_bound.sum).c_str(),
                    format_double(od.union_bound.max).c_str(), method_name(od.report.method),
                    format_double(od.report.residual_norm).c_str(),
                    static_cast<unsigned long long>(od.report.iterations),
                    static_cast<unsigned long long>(o.seed));
    } else if (o.format == "human") {
        std::printf("n=%d m=%d |G|=%llu dim=%s |H|=%llu contains_swap=%s\n", cfg.n, cfg.m,
                    static_cast<unsigned long long>(cfg.group_order),
                    to_string_u128(cfg.dimension).c_str(),
                    static_cast<unsigned long long>(h.order()), od.contains_swap ? "yes" : "no");
        std::printf("p1=%s p0=%s bound=%s\n", format_double(od.p1).c_str(),
                    format_double(od.p0).c_str(), format_double(od.bound).c_str());
        std::printf("sum_k <P(k)> = %s, max_k <P(k)> = %s\n",
                    format_double(od.union_bound.sum).c_str(),
                    format_double(od.union_bound.max).c_str());
        std::printf("method=%s residual=%s iterations=%llu converged=%s\n",
                    method_name(od.report.method), format_double(od.report.residual_norm).c_str(),
                    static_cast<unsigned long long>(od.report.iterations),
                    od.report.converged ? "yes" : "no");
    } else {
        JsonWriter w;
        w.num("n", cfg.n)
            .num("m", cfg.m)
            .num("group_order", cfg.group_order)
            .num("dimension", cfg.dimension)
            .num("h_order", h.order())
            .boolean("contains_swap", od.contains_swap)
            .num("p1", od.p1)
            .num("p0", od.p0)
            .num("bound", od.bound)
            .num("sum_swap_expect", od.union_bound.sum)
            .num("max_swap_expect", od.union_bound.max)
            .str("method", method_name(od.report.method))
            .num("residual", od.report.residual_norm)
            .num("iterations", od.report.iterations)
            .num("seed", o.seed)
            .array("reps", rep_ranks);
        std::printf("%s\n", w.done().c_str());
    }
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    VerifyOptions opt;
    opt.seed = o.seed ? o.seed : opt.seed;
    opt.limits = make_limits(o);
    if (o.n) {
        opt.gprime_n_min = opt.gprime_n_max = o.n;
        opt.dims_n = o.n;
        opt.group_n_exhaustive = std::min(o.n, 3);
    }
    if (o.m > 1) {
        opt.dims_m = o.m;
        opt.swap_expectation_m_max = o.m;
        opt.theorem2_m = o.m;
    }
    if (o.trials > 1) opt.sampling_trials = o.trials;
    if (!o.g1_path.empty() && !o.g2_path.empty())
        opt.swap_expectation_pair = {{Graph::parse_file(o.g1_path), Graph::parse_file(o.g2_path)}};

    CheckList checks;
    auto append = [&](CheckList more) { checks.insert(checks.end(), more.begin(), more.end()); };
    bool all = o.suite == "all";
    if (all || o.suite == "group") append(suite_group(opt));
    if (all || o.suite == "gprime") append(suite_gprime(opt));
    if (all || o.suite == "dims") append(suite_dims(opt));
    if (all || o.suite == "swap-expectation") append(suite_swap_expectation(opt));
    if (all || o.suite == "theorem1") append(suite_theorem1(opt));
    if (all || o.suite == "theorem2") append(suite_theorem2(opt));
    if (all || o.suite == "agreement") append(suite_agreement(opt));
    if (all || o.suite == "sampling") append(suite_sampling(opt));

    for (const auto& c : checks)
        std::printf("%s  %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    return all_passed(checks) ? 0 : 1;
}

int cmd_swaps(const CommonOpts& o) {
    auto swaps = involutive_swaps(o.n);
    GroupIndexer gi(o.n);
    if (o.format == "json") {
        std::string arr = "[";
        for (size_t i = 0; i < swaps.size(); ++i) {
            if (i) arr += ',';
            arr += std::to_string(gi.rank(swaps[i]));
        }
        JsonWriter w;
        w.num("n", o.n).num("count", static_cast<uint64_t>(swaps.size())).raw("ranks", arr + "]");
        std::printf("%s\n", w.done().c_str());
    } else {
        std::printf("n=%d: %zu involutive swaps\n", o.n, swaps.size());
        for (const auto& k : swaps)
            std::printf("  rank %llu: %s\n", static_cast<unsigned long long>(gi.rank(k)),
                        k.to_string().c_str());
    }
    return 0;
}

int cmd_gprime(const CommonOpts& o) {
    CharacterizationReport rep = verify_characterization(o.n);
    if (o.format == "json") {
        JsonWriter w;
        w.num("n", rep.n)
            .num("group_order", rep.group_order)
            .num("gprime_order", rep.closure_order)
            .num("index", rep.index)
            .boolean("match", rep.match);
        std::printf("%s\n", w.done().c_str());
    } else {
        std::printf("n=%d |G|=%llu |G'|=%llu index=%llu characterization match=%s\n", rep.n,
                    static_cast<unsigned long long>(rep.group_order),
                    static_cast<unsigned long long>(rep.closure_order),
                    static_cast<unsigned long long>(rep.index), rep.match ? "yes" : "no");
    }
    return rep.match ? 0 : 1;
}

int cmd_autgroup(const CommonOpts& o) {
    GraphPair pair = load_pair(o);
    size_t aut1 = automorphisms(pair.g1).size();
    size_t aut2 = automorphisms(pair.g2).size();
    size_t isos = isomorphisms(pair.g1, pair.g2).size();
    uint64_t h_order = 0;
    bool swap = false;
    if (pair.note != ConnectivityNote::trivially_nonisomorphic) {
        HiddenSubgroup h = build_hidden_subgroup(pair);
        h_order = h.order();
        swap = contains_involutive_swap(h);
    }
    if (o.format == "json") {
        JsonWriter w;
        w.num("n", pair.g1.n)
            .str("connectivity", connectivity_note_name(pair.note))
            .num("aut1", static_cast<uint64_t>(aut1))
            .num("aut2", static_cast<uint64_t>(aut2))
            .num("isomorphisms", static_cast<uint64_t>(isos))
            .num("h_order", h_order)
            .boolean("contains_swap", swap);
        std::printf("%s\n", w.done().c_str());
    } else {
        std::printf("n=%d connectivity=%s |Aut(G1)|=%zu |Aut(G2)|=%zu |Iso(G1,G2)|=%zu\n",
                    pair.g1.n, connectivity_note_name(pair.note), aut1, aut2, isos);
        std::printf("|H|=%llu contains_swap=%s\n", static_cast<unsigned long long>(h_order),
                    swap ? "yes" : "no");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator of the swap observable for graph isomorphism on S_n wr S_2"};
    app.require_subcommand(1);
    CommonOpts o;

    auto* decide_cmd = app.add_subcommand("decide", "run repeated-trial isomorphism decisions");
    decide_cmd->add_option("--g1", o.g1_path, "first graph file")->required();
    decide_cmd->add_option("--g2", o.g2_path, "second graph file")->required();
    decide_cmd->add_option("--m", o.m, "tensor positions")->required();
    decide_cmd->add_option("--trials", o.trials, "measurement trials");
    decide_cmd->add_option("--seed", o.seed, "RNG seed");
    decide_cmd->add_option("--format", o.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    add_engine_flags(decide_cmd, o);

    auto* prob_cmd = app.add_subcommand("prob", "outcome probabilities without sampling");
    bool prob_format_set = false;
    prob_cmd->add_option("--g1", o.g1_path)->required();
    prob_cmd->add_option("--g2", o.g2_path)->required();
    prob_cmd->add_option("--m", o.m)->required();
    prob_cmd->add_option("--seed", o.seed);
    prob_cmd
        ->add_option_function<std::string>(
            "--format",
            [&](const std::string& v) {
                o.format = v;
                prob_format_set = true;
            },
            "json | csv | human (default json)")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    add_engine_flags(prob_cmd, o);

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    verify_cmd
        ->add_option("--suite", o.suite,
                     "group | gprime | dims | swap-expectation | theorem1 | theorem2 | "
                     "agreement | sampling | all")
        ->check(CLI::IsMember({"group", "gprime", "dims", "swap-expectation", "theorem1",
                               "theorem2", "agreement", "sampling", "all"}));
    verify_cmd->add_option("--n", o.n, "suite-specific degree");
    verify_cmd->add_option("--m", o.m, "suite-specific tensor positions");
    verify_cmd->add_option("--seed", o.seed);
    verify_cmd->add_option("--trials", o.trials, "sampling suite trials");
    verify_cmd->add_option("--g1", o.g1_path, "swap-expectation fixture override");
    verify_cmd->add_option("--g2", o.g2_path, "swap-expectation fixture override");
    add_engine_flags(verify_cmd, o);

    auto* swaps_cmd = app.add_subcommand("swaps", "list the n! involutive swaps");
    swaps_cmd->add_option("--n", o.n)->required();
    swaps_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "human"}));

    auto* gprime_cmd = app.add_subcommand("gprime", "verify the G' characterization");
    gprime_cmd->add_option("--n", o.n)->required();
    gprime_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "human"}));

    auto* aut_cmd = app.add_subcommand("autgroup", "automorphism/hidden-subgroup summary");
    aut_cmd->add_option("--g1", o.g1_path)->required();
    aut_cmd->add_option("--g2", o.g2_path, "defaults to --g1");
    aut_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "human"}));

    try {
        app.parse(argc, argv);
        if (prob_cmd->parsed() && !prob_format_set) o.format = "json";
        if (decide_cmd->parsed()) return cmd_decide(o);
        if (prob_cmd->parsed()) return cmd_prob(o);
        if (verify_cmd->parsed()) return cmd_verify(o);
        if (swaps_cmd->parsed()) return cmd_swaps(o);
        if (gprime_cmd->parsed()) return cmd_gprime(o);
        if (aut_cmd->parsed()) return cmd_autgroup(o);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const resource_error& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return 3;
    } catch (const theorem_violation& e) {
        std::fprintf(stderr, "theorem violation (implementation bug): %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
