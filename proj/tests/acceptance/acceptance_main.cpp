// Acceptance suite: runs the full verification catalog and reports one line
// per acceptance criterion. Exit code 0 iff every criterion holds.

#include <cstdio>
#include <map>
#include <vector>

#include "s2xs2/verify.hpp"

int main() {
    using namespace s2xs2;

    static const char* kCriteria[13] = {
        nullptr,
        "Lagrangian sweeps pass at 1e-9 with the identity-graph control failing, under 10 s",
        "C^2 <= 1/4 everywhere; constant-C graphs reproduce lambda to 1e-8",
        "totally geodesic sphere and torus: sigma, C, K, area, degree",
        "parallel mean curvature family: residual 1e-5, |H| spread 1e-8",
        "Gauss equation residuals: 1e-4 finite-difference, 1e-6 analytic",
        "isoparametric identities of C on the Klein bottle and the Lawson Gauss map",
        "Gauss map relations, Clifford cover of the torus, Lawson degree and max C",
        "Klein bottle: deck invariance, membership, minimality, area 12 pi E, under 5 s",
        "sinh-Gordon: explicit solution, reduced ODE, compatibility, first integral",
        "spectra: flat-torus dispersion and refinement, Klein lambda1, dense cross-check",
        "index counts: Ind(T) = 2, Ind0(B) = 0, Ind1(B) >= 2, Rayleigh bounds",
        "all property suites green end to end within five minutes",
    };

    VerifyOptions opt;  // defaults: every suite, 64x64 grids
    std::vector<CheckResult> results;
    try {
        results = run_verify(opt);
    } catch (const std::exception& e) {
        std::printf("FAIL criterion harness: exception: %s\n", e.what());
        return 1;
    }

    std::map<int, std::vector<const CheckResult*>> by_criterion;
    for (const auto& c : results)
        if (c.criterion > 0) by_criterion[c.criterion].push_back(&c);

    bool everything_passed = all_pass(results);
    int exit_code = 0;
    for (int crit = 1; crit <= 12; ++crit) {
        bool pass = true;
        int count = 0;
        const CheckResult* worst = nullptr;
        for (const CheckResult* c : by_criterion[crit]) {
            ++count;
            if (!c->pass) {
                pass = false;
                worst = c;
            }
        }
        if (crit == 12) pass = pass && everything_passed;
        if (!pass) exit_code = 1;
        std::printf("%s criterion %2d: %s  [%d checks]\n", pass ? "PASS" : "FAIL", crit,
                    kCriteria[crit], count);
        if (!pass && worst != nullptr)
            std::printf("          worst: %s:%s  value %.6g > threshold %.6g\n",
                        worst->suite.c_str(), worst->name.c_str(), worst->value,
                        worst->threshold);
    }

    int failures = 0;
    for (const auto& c : results)
        if (!c.pass) {
            ++failures;
            std::printf("  failed check: %s:%s  value %.6g > %.6g %s\n", c.suite.c_str(),
                        c.name.c_str(), c.value, c.threshold, c.detail.c_str());
        }
    std::printf("%d checks, %d failures\n", static_cast<int>(results.size()), failures);
    return exit_code;
}
