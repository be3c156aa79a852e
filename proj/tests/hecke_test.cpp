#include <gtest/gtest.h>

#include <tracelab/hecke.hpp>

using namespace tracelab;

namespace {

TorusCharacter of_order(const PicardGroup &G, int ord)
{
    for (auto &c : characters(G, 1)) {
        if (c.character_order() == ord) return c;
    }
    throw std::runtime_error("no character of that order");
}

} // namespace

TEST(Eigenvalue, Examples)
{
    auto E = picard_group(parse_curve("ell:q=3;a=1;b=0"));
    auto r = eigenvalue_check(*E, trivial_character(*E), 1, 2);
    EXPECT_EQ(r.lhs, RingElem(16));
    EXPECT_TRUE(r.equal);
    const auto chi4 = of_order(*E, 4);
    auto r4 = eigenvalue_check(*E, chi4, 1, 1);
    EXPECT_TRUE(r4.lhs.is_zero());
    EXPECT_TRUE(r4.equal);
    auto r42 = eigenvalue_check(*E, chi4, 2, 1);
    EXPECT_TRUE(r42.lhs.is_zero());
    EXPECT_EQ(r42.lhs, eigenvalue_check(*E, of_order(*E, 2), 1, 1).lhs);
}

TEST(Eigenvalue, EnumerationMatchesEulerProduct)
{
    for (auto s : {"p1:q=3", "ell2:q=2;f=x^3", "ell:q=3;a=1;b=0", "hyp:q=3;f=x^5+x"}) {
        auto G = picard_group(parse_curve(s));
        const unsigned dmax = static_cast<unsigned>(2 * G->curve().genus() + 3);
        for (auto &chi : characters(*G, 2)) {
            for (int m = 0; m <= 2; ++m) {
                for (unsigned d = 0; d <= dmax; ++d) {
                    auto r = eigenvalue_check(*G, chi, m, d);
                    EXPECT_TRUE(r.equal) << s << " " << chi.label << " m=" << m << " d=" << d << ": " << r.lhs << " vs " << r.rhs;
                }
            }
        }
    }
}

TEST(Vanishing, Scans)
{
    auto E = picard_group(parse_curve("ell:q=3;a=1;b=0"));
    for (auto &chi : characters(*E, 1)) {
        auto s = vanishing_scan(*E, chi, 1, 0, 5);
        if (chi.geometrically_trivial()) {
            EXPECT_EQ(s.nonzero.size(), 6u);
            EXPECT_FALSE(s.applies);
        } else {
            EXPECT_TRUE(s.applies);
            EXPECT_TRUE(s.holds);
            EXPECT_EQ(s.nonzero, std::vector<unsigned>{0});
        }
    }
    auto H = picard_group(parse_curve("hyp:q=3;f=x^5+x"));
    auto s2 = vanishing_scan(*H, of_order(*H, 2), 1, 0, 6);
    EXPECT_TRUE(s2.holds);
    for (auto d : s2.nonzero) EXPECT_LE(d, 2u);
    for (auto s : {"ell2:q=2;f=x^3", "ell:q=5;a=4;b=0", "hyp:q=3;f=x^5+x"}) {
        auto G = picard_group(parse_curve(s));
        for (auto &chi : characters(*G, 1)) {
            for (int m = 1; m <= 2; ++m) EXPECT_TRUE(vanishing_scan(*G, chi, m, 0, static_cast<unsigned>(2 * G->curve().genus() + 2)).holds) << s;
        }
    }
}

TEST(Gl1, RelativeTraceIsQMinusOne)
{
    EXPECT_EQ(gl1_relative_trace(*picard_group(parse_curve("ell:q=3;a=1;b=0"))).value, RingElem(2));
    EXPECT_EQ(gl1_relative_trace(*picard_group(parse_curve("ell2:q=2;f=x^3"))).value, RingElem(1));
    EXPECT_EQ(gl1_relative_trace(*picard_group(parse_curve("p1:q=5"))).value, RingElem(4));
    EXPECT_EQ(gl1_relative_trace(*picard_group(parse_curve("p1:q=7"))).value, RingElem(6));
    for (auto s : {"ell:q=5;a=1;b=1", "ell:q=7;a=3;b=2", "ell2:q=4;f=x^3+x", "hyp:q=3;f=x^5+x", "hyp:q=5;f=x^5+x+2"}) {
        auto t = gl1_relative_trace(*picard_group(parse_curve(s)));
        EXPECT_TRUE(t.equal) << s;
        EXPECT_EQ(t.characters, t.p_at_one);
    }
}

TEST(Kernel, TranslationsAndSpectralAction)
{
    auto E = picard_group(parse_curve("ell:q=3;a=1;b=0"));
    auto K0 = build_kernel(*E, 2, {0});
    ASSERT_EQ(K0.translations.size(), 1u);
    EXPECT_EQ(K0.translations.begin()->first, (std::pair<int, long>{0, 0}));
    EXPECT_EQ(K0.mass, 16);
    EXPECT_EQ(K0.diagonal_trace, 16 * 4);
    auto K1 = build_kernel(*E, 1, {1});
    EXPECT_EQ(K1.mass, 4);
    EXPECT_EQ(K1.translations.size(), 4u);
    EXPECT_TRUE(K1.translation_invariant);
    EXPECT_EQ(K1.diagonal_trace, 0);
    for (auto &chi : characters(*E, 2)) EXPECT_EQ(K1.action(chi, *E), eigenvalue_check(*E, chi, 1, 1).lhs);
    for (auto s : {"ell2:q=2;f=x^3", "hyp:q=3;f=x^5+x", "p1:q=3"}) {
        auto G = picard_group(parse_curve(s));
        for (unsigned d = 0; d <= 3; ++d) {
            for (int m = 0; m <= 2; ++m) {
                auto K = build_kernel(*G, d, {m});
                EXPECT_TRUE(K.translation_invariant);
                EXPECT_EQ(K.mass, sym_power_point_count(G->curve(), d));
                if (m * static_cast<int>(d) != 0) EXPECT_EQ(K.diagonal_trace, 0);
                for (auto &chi : characters(*G, 2)) EXPECT_EQ(K.action(chi, *G), eigenvalue_check(*G, chi, m, d).lhs) << s;
            }
            // two weights: eigenvalue is the coefficient of L(chi) L(chi^2)
            auto K12 = build_kernel(*G, d, {1, 2});
            for (auto &chi : characters(*G, 1)) {
                auto L = series_mul(euler_product(*G, chi, 0, d), euler_product(*G, chi.power(2), 0, d), d + 1);
                EXPECT_EQ(K12.action(chi, *G), L[d]) << s << " d=" << d;
            }
        }
    }
}
