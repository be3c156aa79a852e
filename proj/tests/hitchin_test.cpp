#include <gtest/gtest.h>

#include <tracelab/hitchin.hpp>

using namespace tracelab;

namespace {

HitchinBasePoint point(const CurvePtr &X, const std::string &D, const std::string &num, const std::string &den = "1")
{
    const Field *F = &X->field();
    return HitchinBasePoint{X, parse_divisor(*X, D), {}, make_function(*X, parse_poly(F, num), Poly(F), parse_poly(F, den))};
}

} // namespace

TEST(HitchinBase, Sizes)
{
    EXPECT_EQ(hitchin_base_size(*parse_curve("p1:q=3"), 2), 351);
    EXPECT_EQ(hitchin_base_size(*parse_curve("p1:q=7"), 0), 7);
    EXPECT_EQ(hitchin_base_size(*parse_curve("ell:q=3;a=1;b=0"), 2), 144);
    for (auto s : {"p1:q=3", "ell:q=3;a=1;b=0"}) {
        auto X = parse_curve(s);
        std::int64_t n = 0;
        hitchin_base_enumerate(X, 2, [&](const HitchinBasePoint &pt) {
            ++n;
            // div(b) + D >= 0
            if (!pt.b.is_zero()) {
                EXPECT_TRUE((divisor_of_function(*X, pt.b) + pt.D).is_effective());
            }
        });
        EXPECT_EQ(n, hitchin_base_size(*X, 2)) << s;
    }
    EXPECT_THROW(hitchin_base_size(*parse_curve("p1:q=4"), 1), Error);
    try {
        hitchin_base_size(*parse_curve("ell2:q=2;f=x^3"), 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::EvenCharacteristic);
    }
}

TEST(Discriminant, Examples)
{
    auto X = parse_curve("p1:q=5");
    const auto r = discriminant(point(X, "2*[inf]", "x^2+2"));
    EXPECT_EQ(r.delta, 1);
    EXPECT_EQ(r.discr.degree(), 4);
    EXPECT_EQ(r.discr.multiplicity(parse_place(*X, "x")), 2);
    EXPECT_EQ(r.discr.multiplicity(parse_place(*X, "x+4")), 1);
    EXPECT_EQ(r.discr.multiplicity(parse_place(*X, "x+1")), 1);
    EXPECT_EQ(r.D1.degree(), 2);

    const auto z = discriminant(point(X, "2*[inf]", "0"));
    EXPECT_EQ(z.discr, parse_divisor(*X, "4*[inf]"));
    EXPECT_EQ(z.delta, 2);

    for (auto c : {"2", "3"}) {
        try {
            discriminant(point(X, "2*[inf]", c));
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::NonReducedSpectralCurve);
        }
    }
}

TEST(Discriminant, Pi0Examples)
{
    auto X = parse_curve("p1:q=5");
    auto full = pi0_classify(point(X, "1*[x]+1*[inf]", "x^2+1", "x"));
    EXPECT_EQ(full.first, Pi0Class::FullZ);
    EXPECT_TRUE(full.second);
    EXPECT_EQ(pi0_classify(point(X, "2*[inf]", "x^2+2")).first, Pi0Class::Zero);
    auto nonsplit = pi0_classify(point(X, "2*[inf]", "1"));
    EXPECT_EQ(nonsplit.first, Pi0Class::FullZ);
    EXPECT_FALSE(nonsplit.second);
}

TEST(Discriminant, InvariantsOverWholeBases)
{
    for (auto s : {"p1:q=3", "p1:q=5", "ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0"}) {
        auto X = parse_curve(s);
        const unsigned dmax = X->is_p1() ? 3 : 2;
        for (unsigned d = 0; d <= dmax; ++d) {
            if (X->q() == 5 && d == 3) continue;
            std::map<Pi0Class, int> seen;
            hitchin_base_enumerate(X, d, [&](const HitchinBasePoint &pt) {
                if (non_reduced(pt)) return;
                const auto r = discriminant(pt);
                ASSERT_EQ(r.discr.degree(), 2 * static_cast<long>(d));
                EXPECT_EQ(r.D1.degree() + 2 * r.D2.degree(), r.discr.degree());
                long pointwise = 0;
                for (auto &[P, n] : r.discr.terms()) pointwise += (n / 2) * P.degree;
                EXPECT_EQ(r.delta, pointwise);
                EXPECT_GE(r.delta, 0);
                EXPECT_LE(r.delta, static_cast<int>(d));
                if (X->is_p1()) {
                    EXPECT_EQ(delta_by_squarefree(pt), r.delta) << pt.D.str() << " " << pt.b.str();
                }
                // Zero exactly when some multiplicity is odd
                EXPECT_EQ(r.pi0 == Pi0Class::Zero, !r.D1.is_zero());
                ++seen[r.pi0];
            });
            if (X->is_p1()) {
                EXPECT_EQ(seen.count(Pi0Class::TwoTorsion), 0u);
            }
        }
    }
}

TEST(Discriminant, EllipticSquareClasses)
{
    // on E/F_3 with d = 2 the even-discriminant points split into the classes
    auto X = parse_curve("ell:q=3;a=1;b=0");
    std::map<Pi0Class, int> seen;
    hitchin_base_enumerate(X, 2, [&](const HitchinBasePoint &pt) {
        if (non_reduced(pt)) return;
        const auto r = discriminant(pt);
        ++seen[r.pi0];
        if (r.pi0 == Pi0Class::FullZ && r.split) {
            // b^2 - 4 = s^2 for some s in L(D)
            const Function g = sub(*X, mul(*X, pt.b, pt.b), constant_function(*X, 1));
            bool found = false;
            detail::for_each_combination(*X, riemann_roch_space(*X, pt.D), [&](const std::vector<elem> &, const Function &s) { found = found || mul(*X, s, s) == g; });
            EXPECT_TRUE(found);
        }
    });
    EXPECT_GT(seen[Pi0Class::Zero], 0);
    EXPECT_GT(seen[Pi0Class::FullZ], 0);
}

TEST(Stratify, FastPathMatchesEnumeration)
{
    for (auto s : {"p1:q=3", "p1:q=5", "p1:q=7"}) {
        auto X = parse_curve(s);
        for (unsigned d = 0; d <= 2; ++d) {
            const auto fast = delta_histogram(X, d);
            const auto slow = delta_histogram_enumerated(X, d);
            EXPECT_EQ(fast.counts, slow.counts) << s << " d=" << d;
            EXPECT_EQ(fast.nonreduced, slow.nonreduced);
        }
    }
}

TEST(Stratify, ProjectiveLineTower)
{
    const auto S = stratify(parse_curve("p1:q=3"), 2, 3);
    EXPECT_TRUE(S.partition_ok);
    EXPECT_TRUE(S.pass);
    EXPECT_EQ(S.fields, (std::vector<std::uint64_t>{3, 9, 27}));
    int top = 0;
    for (auto &row : S.rows) {
        if (row.q > 3) {
            ASSERT_TRUE(row.est_dim.has_value());
        }
        if (row.q == 27 && row.delta <= 2) {
            EXPECT_NEAR(*row.est_dim, 5 - row.delta, 0.5);
            ++top;
        }
    }
    EXPECT_EQ(top, 3);
    // F_3 -> F_9 is still far from the leading term for delta = 0
    EXPECT_GT(*S.rows[3].est_dim, 5.5);
    // b = 0 lands in the top stratum for every D
    auto X = parse_curve("p1:q=3");
    for (auto &D : effective_divisors(*X, 2)) {
        EXPECT_EQ(discriminant(HitchinBasePoint{X, D, {}, make_function(*X, Poly(&X->field()))}).delta, 2);
    }
}

TEST(Stratify, EllipticBase)
{
    const auto S = stratify(parse_curve("ell:q=3;a=1;b=0"), 2, 3);
    EXPECT_TRUE(S.partition_ok);
    EXPECT_TRUE(S.pass);
    EXPECT_EQ(S.base_size.back(), 571536);
}

TEST(Stratify, PairCountMatchesEnumerationOnEllipticBases)
{
    for (auto s : {"ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0", "ell:q=7;a=1;b=0"}) {
        auto X = parse_curve(s);
        for (unsigned d = 1; d <= (X->q() == 3 ? 3u : 2u); ++d) {
            const auto fast = delta_histogram(X, d);
            const auto slow = delta_histogram_enumerated(X, d);
            EXPECT_EQ(fast.counts, slow.counts) << s << " d=" << d;
            EXPECT_EQ(fast.nonreduced, slow.nonreduced);
        }
    }
    auto X9 = parse_curve("ell:q=3;a=1;b=0")->base_change(2);
    EXPECT_EQ(delta_histogram(X9, 2).counts, delta_histogram_enumerated(X9, 2).counts);
}

TEST(Martens, Counts)
{
    auto E = parse_curve("ell:q=3;a=1;b=0");
    EXPECT_EQ(martens_fiber_count(E, 2, 1), 64);
    EXPECT_EQ(martens_fiber_count(E, 2, 2), 1600);
    auto P = parse_curve("p1:q=5");
    for (unsigned d = 0; d <= 3; ++d) {
        const auto n = static_cast<std::int64_t>(effective_divisor_count(*P, d));
        EXPECT_EQ(martens_fiber_count(P, d, 1), n * n);
    }
    for (unsigned d : {1u, 2u}) {
        const auto g = martens_growth(E, d);
        EXPECT_EQ(g.expected, 2 * static_cast<int>(d) - 1);
        EXPECT_TRUE(g.ok) << d << " " << g.exponent;
    }
    EXPECT_NEAR(martens_growth(E, 2).exponent, 2.93, 0.01);
}

TEST(Martens, TorsorIdentity)
{
    const auto p = gm_torsor_check(parse_curve("p1:q=3"), 2);
    EXPECT_EQ(p.lhs, 338);
    EXPECT_EQ(p.rhs, 338);
    const auto e = gm_torsor_check(parse_curve("ell:q=3;a=1;b=0"), 2);
    EXPECT_EQ(e.lhs, 128);
    EXPECT_TRUE(e.equal);
    for (auto s : {"p1:q=3", "p1:q=5", "ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0"}) {
        auto X = parse_curve(s);
        for (unsigned d = 0; d <= 2; ++d) {
            const auto t = gm_torsor_check(X, d);
            EXPECT_TRUE(t.equal) << s << " d=" << d;
            if (d == 0) {
                EXPECT_EQ(t.lhs, static_cast<std::int64_t>(X->q()) - 1);
            }
        }
    }
}

TEST(HitchinFiber, SmoothSpectralCurves)
{
    auto X = parse_curve("p1:q=5");
    const auto g0 = hitchin_fiber_count(point(X, "1*[inf]", "x"));
    EXPECT_EQ(g0.genus, 0);
    EXPECT_EQ(g0.fiber, 1);
    EXPECT_TRUE(g0.equal);
    try {
        hitchin_fiber_count(point(X, "2*[inf]", "x^2+2"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularSpectralCurve);
    }
    const auto g1 = hitchin_fiber_count(point(X, "2*[inf]", "x^2+1"));
    EXPECT_EQ(g1.genus, 1);
    EXPECT_TRUE(g1.enumerated);
    EXPECT_TRUE(g1.equal);
    // every smooth point with D = 3[inf] over F_3 (genus 2 spectral curves)
    auto P3 = parse_curve("p1:q=3");
    int smooth = 0;
    for (auto D : {"2*[inf]", "3*[inf]"}) {
        const Divisor Dv = parse_divisor(*P3, D);
        detail::for_each_combination(*P3, riemann_roch_space(*P3, Dv), [&](const std::vector<elem> &, const Function &b) {
            HitchinBasePoint pt{P3, Dv, {}, b};
            if (non_reduced(pt) || discriminant(pt).delta > 0) return;
            const auto f = hitchin_fiber_count(pt);
            EXPECT_TRUE(f.equal) << b.str();
            ++smooth;
        });
    }
    EXPECT_GT(smooth, 0);
}
