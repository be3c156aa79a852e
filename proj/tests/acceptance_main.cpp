// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <cstdio>

#include <tracelab/acceptance.hpp>

int main()
{
    using namespace tracelab::lab;
    Config cfg;
    int failed = 0;
    const Report r = run_suite(cfg, [&](const Criterion &c, const CriterionResult &res, double secs) {
        std::printf("%s %2d %-32s checks=%-5d %8.2fs%s%s\n", res.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), res.checks, secs, res.detail.empty() ? "" : "  ", res.detail.c_str());
        std::fflush(stdout);
        failed += res.pass ? 0 : 1;
    });
    std::printf("%s: %d of %zu criteria passed\n", r.pass ? "ACCEPTED" : "REJECTED", static_cast<int>(r.rows.size()) - failed, r.rows.size());
    return r.pass ? 0 : 1;
}
