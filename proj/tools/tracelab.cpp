// tracelab: command-line front end for the experiment runners.
//
// Exit codes: 0 pass, 1 identity failure, 2 usage or parse error, 3 cap
// exceeded, 4 unsupported input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <tracelab/acceptance.hpp>

namespace {

using namespace tracelab;
using namespace tracelab::lab;

enum Exit { kPass = 0, kIdentityFailure = 1, kUsage = 2, kCap = 3, kUnsupported = 4 };

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::NotPrime:
        return kUsage;
    case ErrorKind::CapExceeded:
        return kCap;
    case ErrorKind::EvenCharacteristic:
    case ErrorKind::UnsupportedCurve:
    case ErrorKind::UnsupportedDivisor:
    case ErrorKind::NonReducedSpectralCurve:
    case ErrorKind::SingularSpectralCurve:
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::ZeroFunction:
    case ErrorKind::NotTwoTorsion:
        return kUnsupported;
    case ErrorKind::InconsistentCounts:
    case ErrorKind::Internal:
        return kIdentityFailure;
    }
    return kIdentityFailure;
}

using Runner = Report (*)(const Config &);

Report suite(const Config &cfg) { return run_suite(cfg); }

struct Command {
    const char *name;
    const char *help;
    Runner run;
    bool needs_curve;
};

const Command kCommands[] = {
    {"zeta", "zeta numerator, functional equation and point counts", run_zeta, true},
    {"lfun", "Euler product against the cohomological L-series for every character", run_lfun, true},
    {"gl1-trace", "relative trace for GL1 against q - 1", run_gl1_trace, true},
    {"torus-compare", "twisted torus of the etale double cover of an elliptic curve", run_torus_compare, false},
    {"hitchin-strata", "delta stratification, pi_0 classes, torsor and Martens counts", run_hitchin_strata, true},
    {"suite", "every acceptance criterion", suite, false},
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact trace-formula identities for tori and SL2 over function fields", "tracelab"};
    app.set_version_flag("--version", TRACELAB_VERSION);
    app.require_subcommand(1);

    Config cfg;
    bool timing = false;
    std::vector<std::pair<CLI::App *, const Command *>> subs;
    for (const Command &c : kCommands) {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        auto *curve = sub->add_option("--curve", cfg.curve, "curve descriptor, e.g. ell:q=3;a=1;b=0");
        if (c.needs_curve) curve->required();
        sub->add_option("--d", cfg.d, "divisor degree")->capture_default_str()->check(CLI::NonNegativeNumber);
        sub->add_option("--dmax", cfg.dmax, "largest series degree (default depends on the command)")->check(CLI::NonNegativeNumber);
        sub->add_option("--m", cfg.m, "Hecke weight bound")->capture_default_str()->check(CLI::NonNegativeNumber);
        sub->add_option("--tower", cfg.tower, "number of fields F_q, ..., F_{q^n}")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "report format")->capture_default_str()->check(CLI::IsMember({"json", "tsv"}));
        sub->add_option("--out", cfg.out, "write the report here instead of stdout");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
        sub->add_option("--cap", cfg.cap, "enumeration cap")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_flag("--timing", timing, "include wall-clock duration in the report");
        subs.emplace_back(sub, &c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    cfg.timing = timing;

    const Command *cmd = nullptr;
    for (auto &[sub, c] : subs) {
        if (sub->parsed()) cmd = c;
    }
    if (!cfg.out.empty()) {
        const auto parent = std::filesystem::path(cfg.out).parent_path();
        if (!parent.empty() && !std::filesystem::is_directory(parent)) {
            std::cerr << "tracelab: error: output directory does not exist: " << parent.string() << "\n";
            return kUsage;
        }
    }

    set_enumeration_cap(cfg.cap);
    Report report;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        report = cmd->run(cfg);
        if (cfg.timing) report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } catch (const Error &e) {
        std::cerr << "tracelab: error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "tracelab: error: " << e.what() << "\n";
        return kIdentityFailure;
    }

    const std::string text = report.render(cfg.format);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        f << text;
        if (!f) {
            std::cerr << "tracelab: error: cannot write " << cfg.out << "\n";
            return kUsage;
        }
    }
    return report.pass ? kPass : kIdentityFailure;
}
