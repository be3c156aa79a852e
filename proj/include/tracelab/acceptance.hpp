#pragma once

// The acceptance criteria, each a self-contained check over fixed curves, and
// the suite report that aggregates them.

#include <functional>

#include "lab.hpp"

namespace tracelab::lab {

struct CriterionResult {
    bool pass = true;
    std::string detail;
    int checks = 0;
    int failures = 0;

    void expect(bool ok, const std::string &what)
    {
        ++checks;
        if (!ok) {
            ++failures;
            pass = false;
            if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult(const Config &)> run;
};

namespace detail {

inline const std::vector<std::string> &elliptic_sample()
{
    static const std::vector<std::string> curves{"ell2:q=2;f=x^3", "ell2:q=2;f=x^3+x", "ell:q=3;a=1;b=0", "ell:q=3;a=2;b=1", "ell:q=5;a=1;b=1"};
    return curves;
}

inline TorusCharacter character_of_order(const PicardGroup &G, int ord)
{
    for (auto &c : characters(G, 1)) {
        if (c.character_order() == ord) return c;
    }
    throw Error(ErrorKind::Internal, "no character of order " + std::to_string(ord));
}

inline CriterionResult zeta_correctness(const Config &)
{
    CriterionResult r;
    for (int q : {2, 3, 5, 7}) {
        const auto z = zeta_data(*parse_curve("p1:q=" + std::to_string(q)));
        r.expect(z.numerator == std::vector<std::int64_t>{1}, "P(t) != 1 on P^1/F_" + std::to_string(q));
    }
    for (auto &s : elliptic_sample()) {
        auto X = parse_curve(s);
        const auto z = zeta_data(*X);
        const std::vector<std::int64_t> naive{naive_point_count(*X, 1), naive_point_count(*X, 2)};
        const auto from_naive = zeta_from_counts(naive, z.q, X->genus());
        r.expect(from_naive.numerator == z.numerator, s + ": numerator from brute-force counts differs");
        for (unsigned n = 1; n <= 2; ++n) r.expect(predicted_point_count(z, n) == naive[n - 1], s + ": predicted count differs over F_q^" + std::to_string(n));
        r.expect(functional_equation_holds(z), s + ": functional equation");
    }
    return r;
}

inline CriterionResult two_route_lseries(const Config &)
{
    CriterionResult r;
    for (auto s : {"p1:q=3", "ell:q=3;a=1;b=0", "hyp:q=3;f=x^5+x"}) {
        auto G = picard_group(parse_curve(s));
        const unsigned dmax = static_cast<unsigned>(2 * G->curve().genus() + 4);
        for (auto &chi : characters(*G, 2)) {
            GradedLocalSystem sys{G, {Summand{chi, 0, 0}}};
            const auto A = l_series_product(sys, dmax);
            const auto B = l_series_cohomological(frobenius_datum(sys), dmax);
            r.expect(series_weight_equal(A, B, G->curve().q()), std::string(s) + " " + chi.label);
        }
    }
    return r;
}

inline CriterionResult eigenvalue_lemma(const Config &)
{
    CriterionResult r;
    for (auto s : {"ell2:q=2;f=x^3", "ell:q=3;a=1;b=0"}) {
        auto G = picard_group(parse_curve(s));
        for (auto &chi : characters(*G, 2)) {
            for (int m = 0; m <= 2; ++m) {
                for (unsigned d = 0; d <= 5; ++d) {
                    const auto row = eigenvalue_check(*G, chi, m, d);
                    r.expect(row.equal, std::string(s) + " " + chi.label + " m=" + std::to_string(m) + " d=" + std::to_string(d));
                }
            }
        }
    }
    return r;
}

inline CriterionResult vanishing(const Config &)
{
    CriterionResult r;
    for (auto s : {"ell2:q=2;f=x^3", "ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0", "hyp:q=3;f=x^5+x"}) {
        auto G = picard_group(parse_curve(s));
        const unsigned from = static_cast<unsigned>(2 * G->curve().genus() - 2) + 1;
        for (auto &chi : characters(*G, 1)) {
            for (int m = 1; m <= 2; ++m) {
                if (chi.power(m).geometrically_trivial()) continue;
                for (unsigned d = from; d <= 6; ++d) r.expect(eigenvalue_check(*G, chi, m, d).lhs.is_zero(), std::string(s) + " " + chi.label + " m=" + std::to_string(m) + " d=" + std::to_string(d));
            }
        }
    }
    return r;
}

inline CriterionResult gl1_trace_identity(const Config &)
{
    CriterionResult r;
    std::vector<std::string> curves{"p1:q=2", "p1:q=3", "p1:q=5", "p1:q=7", "ell:q=5;a=4;b=0", "ell:q=7;a=1;b=0", "hyp:q=3;f=x^5+x", "hyp:q=5;f=x^5+x+1"};
    curves.insert(curves.end(), elliptic_sample().begin(), elliptic_sample().end());
    for (auto &s : curves) {
        auto G = picard_group(parse_curve(s));
        const auto t = gl1_relative_trace(*G);
        r.expect(t.equal && t.characters == static_cast<std::int64_t>(G->size()), s + ": trace " + t.value.str());
    }
    return r;
}

inline CriterionResult symmetric_powers(const Config &cfg)
{
    CriterionResult r;
    std::mt19937_64 rng(cfg.seed);
    std::vector<PicardPtr> groups{picard_group(parse_curve("ell:q=3;a=1;b=0")), picard_group(parse_curve("hyp:q=3;f=x^5+x")), picard_group(parse_curve("p1:q=5"))};
    for (int it = 0; it < 50; ++it) {
        auto G = groups[static_cast<std::size_t>(it) % groups.size()];
        const auto chars = characters(*G, 2);
        GradedLocalSystem sys{G, {}};
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < n; ++k) sys.summands.push_back({chars[rng() % chars.size()], static_cast<int>(rng() % 9) - 4, static_cast<int>(rng() % 5) - 2});
        const auto datum = frobenius_datum(sys);
        const unsigned dmax = 6;
        const auto C = l_series_cohomological(datum, dmax);
        bool ok = true;
        for (unsigned d = 0; d <= dmax; ++d) ok = ok && sym_power_trace(datum, d) == C[d];
        r.expect(ok, "system " + std::to_string(it) + ": symmetric powers");
        r.expect(series_weight_equal(C, l_series_product(sys, dmax), G->curve().q()), "system " + std::to_string(it) + ": Euler product");
    }
    auto G = groups[0];
    for (int m = 1; m <= 4; ++m) {
        GradedLocalSystem sys{G, std::vector<Summand>(static_cast<std::size_t>(m), Summand{trivial_character(*G), 0, 0})};
        const auto datum = frobenius_datum(sys);
        for (int d = 0; d <= 6; ++d) {
            const RingElem tr = sym_power_trace(datum, static_cast<unsigned>(d));
            r.expect(tr.top_weight() == 2 * d && tr.v_coefficient(2 * d) == RingElem(leading_term_dimension(m, d)), "leading term m=" + std::to_string(m) + " d=" + std::to_string(d));
        }
    }
    return r;
}

inline CriterionResult constant_sheaf(const Config &)
{
    CriterionResult r;
    for (auto s : {"ell:q=3;a=1;b=0", "hyp:q=3;f=x^5+x"}) {
        auto G = picard_group(parse_curve(s));
        const auto triv = trivial_character(*G);
        GradedLocalSystem sys{G, {{triv, -2, -2}, {triv, 0, 0}, {triv, 2, 2}}};
        const auto datum = frobenius_datum(sys);
        const auto z = zeta_data(G->curve());
        for (unsigned d = 0; d <= 5; ++d) r.expect(weight_equal(constant_sheaf_eigenvalue({{-2, 1}, {0, 1}, {2, 1}}, z, d), sym_power_trace(datum, d), G->curve().q()), std::string(s) + " d=" + std::to_string(d));
    }
    return r;
}

inline CriterionResult arthur_trivial_vanishing(const Config &)
{
    CriterionResult r;
    for (auto s : {"hyp:q=3;f=x^5+x", "ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0"}) {
        auto G = picard_group(parse_curve(s));
        const int g = G->curve().genus();
        const auto chi = character_of_order(*G, 2);
        GradedLocalSystem sys{G, {{chi, -2, -2}, {chi, 0, 0}, {chi, 2, 2}}};
        const auto datum = frobenius_datum(sys);
        const unsigned bound = static_cast<unsigned>(3 * (2 * g - 2));
        for (unsigned d = bound + 1; d <= bound + 4; ++d) r.expect(sym_power_trace(datum, d).is_zero(), std::string(s) + " d=" + std::to_string(d));
    }
    return r;
}

inline CriterionResult hitchin_stratification(const Config &)
{
    CriterionResult r;
    const auto S = stratify(parse_curve("p1:q=3"), 2, 3);
    r.expect(S.partition_ok, "strata do not partition the reduced locus");
    for (auto &row : S.rows) {
        if (row.q == 27 && row.delta <= 2) r.expect(row.ok && row.est_dim, "delta=" + std::to_string(row.delta) + " exponent off");
    }
    r.expect(S.pass, "stratification");
    return r;
}

inline CriterionResult gm_torsor(const Config &)
{
    CriterionResult r;
    for (auto s : {"p1:q=3", "ell:q=3;a=1;b=0"}) {
        auto X = parse_curve(s);
        for (unsigned d = 0; d <= 2; ++d) {
            const auto t = gm_torsor_check(X, d);
            r.expect(t.equal, std::string(s) + " d=" + std::to_string(d) + ": " + std::to_string(t.lhs) + " vs " + std::to_string(t.rhs));
        }
    }
    return r;
}

inline CriterionResult martens(const Config &)
{
    CriterionResult r;
    auto X = parse_curve("ell:q=3;a=1;b=0");
    for (unsigned d = 1; d <= 2; ++d) {
        const auto m = martens_growth(X, d);
        r.expect(m.ok && m.expected == static_cast<int>(2 * d - 1), "d=" + std::to_string(d) + " exponent " + fixed(m.exponent));
    }
    return r;
}

inline CriterionResult twisted_torus(const Config &cfg)
{
    CriterionResult r;
    Config c;
    c.curve = kDefaultCoverCurve;
    c.d = 2;
    c.m = 2;
    c.dmax = 4;
    c.seed = cfg.seed;
    const Report rep = run_torus_compare(c);
    for (auto &row : rep.rows) r.expect(row["pass"].get<bool>(), row["check"].get<std::string>());
    return r;
}

} // namespace detail

/// Criteria 1 to 12; the determinism criterion compares whole suite runs.
inline const std::vector<Criterion> &acceptance_criteria()
{
    static const std::vector<Criterion> all{
        {1, "zeta correctness", detail::zeta_correctness},
        {2, "two-route L-series", detail::two_route_lseries},
        {3, "eigenvalue lemma", detail::eigenvalue_lemma},
        {4, "vanishing above 2g-2", detail::vanishing},
        {5, "GL1 trace identity", detail::gl1_trace_identity},
        {6, "symmetric-power calculus", detail::symmetric_powers},
        {7, "constant-sheaf eigenvalue", detail::constant_sheaf},
        {8, "Arthur-trivial datum vanishing", detail::arthur_trivial_vanishing},
        {9, "Hitchin stratification", detail::hitchin_stratification},
        {10, "G_m-torsor identity", detail::gm_torsor},
        {11, "Martens growth", detail::martens},
        {12, "twisted torus", detail::twisted_torus},
    };
    return all;
}

inline constexpr int kDeterminismCriterion = 13;
inline constexpr const char *kDeterminismName = "determinism";

namespace detail {

inline json criterion_row(int id, const std::string &name, const CriterionResult &c)
{
    json row;
    row["id"] = id;
    row["name"] = name;
    row["checks"] = c.checks;
    row["failures"] = c.failures;
    row["pass"] = c.pass;
    row["detail"] = c.detail;
    return row;
}

} // namespace detail

/// Runs criteria 1 to 12. A thrown error fails the criterion with its message.
/// `on_done` sees each result with its wall-clock time.
inline Report run_criteria(const Config &cfg, const std::function<void(const Criterion &, const CriterionResult &, double)> &on_done = {})
{
    Report r;
    r.experiment = "suite";
    r.config = config_echo(cfg);
    r.tsv_header = {"id", "name", "checks", "failures", "pass", "detail"};
    for (auto &c : acceptance_criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = c.run(cfg);
        } catch (const std::exception &e) {
            res.expect(false, std::string("error: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_done) on_done(c, res, secs);
        r.rows.push_back(detail::criterion_row(c.id, c.name, res));
        r.tsv_rows.push_back({std::to_string(c.id), c.name, std::to_string(res.checks), std::to_string(res.failures), detail::yes_no(res.pass), res.detail});
        r.flag(res.pass);
    }
    return r;
}

/// The suite: criteria 1 to 12, then a second run compared byte for byte.
inline Report run_suite(const Config &cfg, const std::function<void(const Criterion &, const CriterionResult &, double)> &on_done = {})
{
    Report r = run_criteria(cfg, on_done);
    const auto t0 = std::chrono::steady_clock::now();
    const Report again = run_criteria(cfg);
    CriterionResult det;
    det.expect(r.render("json") == again.render("json"), "second run differs");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_done) on_done(Criterion{kDeterminismCriterion, kDeterminismName, {}}, det, secs);
    r.rows.push_back(detail::criterion_row(kDeterminismCriterion, kDeterminismName, det));
    r.tsv_rows.push_back({std::to_string(kDeterminismCriterion), kDeterminismName, std::to_string(det.checks), std::to_string(det.failures), detail::yes_no(det.pass), det.detail});
    r.flag(det.pass);
    return r;
}

} // namespace tracelab::lab
