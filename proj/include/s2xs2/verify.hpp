#pragma once

#include <string>
#include <vector>

namespace s2xs2 {

struct CheckResult {
    std::string suite;
    std::string name;
    double value = 0.0;      // measured residual or deviation
    double threshold = 0.0;  // after tol-scale
    bool pass = false;
    int criterion = 0;       // acceptance criterion this check feeds (0 = property only)
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    double tol_scale = 1.0;
    std::vector<std::string> suites;  // subset of the known suites; empty = all
    std::string surface;              // optional id filter for surface-keyed checks
    int nt = 64, ns = 64;
};

inline const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s = {"lagrangian", "minimal",     "identities",
                                               "gaussmap",   "sinh-gordon", "spectral"};
    return s;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

bool all_pass(const std::vector<CheckResult>& results);
std::string verify_report_json(const std::vector<CheckResult>& results, double tol_scale);

} // namespace s2xs2
