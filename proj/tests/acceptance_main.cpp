// Acceptance suite: one pass/fail line per criterion, with the per-check
// lines indented underneath. Exit 0 iff every criterion passes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "wreathsim/verify.hpp"

using namespace wreathsim;

int main() {
    VerifyOptions opt;  // the defaults are the acceptance configurations

    struct Criterion {
        int number;
        std::string name;
        std::function<CheckList()> run;
    };
    std::vector<Criterion> criteria = {
        {1, "theorem 1 suite (isomorphic pairs measure p1 = 1)",
         [&] { return suite_theorem1(opt); }},
        {2, "theorem 2 suite ((P3,K3) under n!/2^m via streamed least squares)",
         [&] { return suite_theorem2(opt); }},
        {3, "per-swap expectation on a verified-rigid pair",
         [&] { return suite_swap_expectation(opt); }},
        {4, "oracle agreement (exact / dense / least squares)",
         [&] { return suite_agreement(opt); }},
        {5, "dimension formulas and measured ranks", [&] { return suite_dims(opt); }},
        {6, "G' closure and characterization", [&] { return suite_gprime(opt); }},
        {7, "group and embedding checks", [&] { return suite_group(opt); }},
        {8, "sampling consistency", [&] { return suite_sampling(opt); }},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        CheckList checks;
        bool threw = false;
        std::string what;
        try {
            checks = c.run();
        } catch (const std::exception& e) {
            threw = true;
            what = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = !threw && all_passed(checks);
        all_ok = all_ok && ok;
        std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.number,
                    c.name.c_str(), secs);
        for (const auto& chk : checks)
            std::printf("        %s %s: %s\n", chk.pass ? "ok  " : "FAIL", chk.name.c_str(),
                        chk.detail.c_str());
        if (threw) std::printf("        exception: %s\n", what.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all_ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES");
    return all_ok ? 0 : 1;
}
