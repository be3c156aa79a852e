#include <gtest/gtest.h>

#include <random>

#include <tracelab/poly.hpp>

using namespace tracelab;

namespace {

Poly random_poly(const Field *F, std::mt19937_64 &rng, int max_deg, bool nonzero = true)
{
    while (true) {
        int d = static_cast<int>(rng() % (max_deg + 1));
        std::vector<elem> c(d + 1);
        for (auto &x : c) x = static_cast<elem>(rng() % F->q());
        Poly f(F, c);
        if (!nonzero || !f.is_zero()) return f;
    }
}

} // namespace

TEST(Poly, TextRoundTrip)
{
    auto F = make_field(7, 1);
    Poly f = parse_poly(F.get(), "x^2+3*x+1");
    EXPECT_EQ(f.str(), "x^2+3*x+1");
    EXPECT_EQ(parse_poly(F.get(), "2*x^3+x+6").str(), "2*x^3+x+6");
    EXPECT_EQ(parse_poly(F.get(), "x^3-x").str(), "x^3+6*x");
    EXPECT_EQ(Poly(F.get()).str(), "0");
    EXPECT_THROW(parse_poly(F.get(), "x^^2"), Error);
    EXPECT_THROW(parse_poly(F.get(), ""), Error);
    auto F4 = make_field(2, 2);
    EXPECT_THROW(parse_poly(F4.get(), "5*x"), Error);
}

TEST(Poly, DivisionLawAndGcd)
{
    std::mt19937_64 rng(11);
    for (auto q : {2u, 3u, 4u, 5u, 9u}) {
        auto F = make_field_q(q);
        for (int it = 0; it < 200; ++it) {
            Poly f = random_poly(F.get(), rng, 10, false), g = random_poly(F.get(), rng, 7);
            auto [qq, r] = divmod(f, g);
            EXPECT_EQ(qq * g + r, f);
            EXPECT_LT(r.degree(), g.degree());
            Poly h = gcd(f, g);
            EXPECT_TRUE((f % h).is_zero());
            EXPECT_TRUE((g % h).is_zero());
            auto [g2, s, t] = xgcd(f, g);
            EXPECT_EQ(g2, h);
            EXPECT_EQ(s * f + t * g, g2);
        }
    }
}

TEST(Poly, SquarefreeExamples)
{
    auto F5 = make_field(5, 1);
    auto dec = squarefree_decompose(parse_poly(F5.get(), "x^4+4*x^2"));
    ASSERT_EQ(dec.size(), 2u);
    EXPECT_EQ(dec[0].first.str(), "x^2+4");
    EXPECT_EQ(dec[0].second, 1);
    EXPECT_EQ(dec[1].first.str(), "x");
    EXPECT_EQ(dec[1].second, 2);

    auto F3 = make_field(3, 1);
    dec = squarefree_decompose(parse_poly(F3.get(), "x"));
    ASSERT_EQ(dec.size(), 1u);
    EXPECT_EQ(dec[0].second, 1);

    auto F2 = make_field(2, 1);
    Poly cube = pow(parse_poly(F2.get(), "x+1"), 3);
    dec = squarefree_decompose(cube);
    ASSERT_EQ(dec.size(), 1u);
    EXPECT_EQ(dec[0].first.str(), "x+1");
    EXPECT_EQ(dec[0].second, 3);

    EXPECT_THROW(squarefree_decompose(Poly(F2.get())), Error);
}

TEST(Poly, SquarefreeReassemblesRandom)
{
    std::mt19937_64 rng(2024);
    for (auto q : {2u, 3u, 5u}) {
        auto F = make_field_q(q);
        for (int it = 0; it < 1000; ++it) {
            // Bias towards repeated factors.
            Poly f = random_poly(F.get(), rng, 4) * pow(random_poly(F.get(), rng, 3), rng() % 4) * pow(random_poly(F.get(), rng, 2), rng() % 6);
            if (f.degree() > 12) f = f % Poly::monomial(F.get(), 1, 13) + Poly::monomial(F.get(), 1, 12);
            if (f.is_zero()) continue;
            auto dec = squarefree_decompose(f);
            Poly acc = Poly::constant(F.get(), f.lc());
            for (std::size_t i = 0; i < dec.size(); ++i) {
                EXPECT_TRUE(dec[i].first.is_monic());
                EXPECT_EQ(gcd(dec[i].first, dec[i].first.derivative()).degree() == 0 || dec[i].first.derivative().is_zero(), true);
                for (std::size_t j = i + 1; j < dec.size(); ++j) EXPECT_EQ(gcd(dec[i].first, dec[j].first).degree(), 0);
                acc *= pow(dec[i].first, dec[i].second);
            }
            EXPECT_EQ(acc, f);
        }
    }
}

TEST(Poly, PerfectSquareRoot)
{
    auto F7 = make_field(7, 1);
    Poly g = parse_poly(F7.get(), "x^2+3*x+1");
    auto r = perfect_square_root(g * g);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, g);
    auto F5 = make_field(5, 1);
    EXPECT_FALSE(perfect_square_root(parse_poly(F5.get(), "x^2-1")));
    EXPECT_FALSE(perfect_square_root(parse_poly(F5.get(), "2*x^2")));
    auto F2 = make_field(2, 1);
    EXPECT_THROW(perfect_square_root(parse_poly(F2.get(), "x^2")), Error);

    std::mt19937_64 rng(5);
    for (auto q : {3u, 5u, 7u, 9u}) {
        auto F = make_field_q(q);
        for (int it = 0; it < 125; ++it) {
            Poly f = random_poly(F.get(), rng, 6);
            auto s = perfect_square_root(f * f);
            ASSERT_TRUE(s);
            EXPECT_EQ((*s) * (*s), f * f);
            EXPECT_TRUE(*s == f || *s == -f);
            EXPECT_EQ(s->lc(), *F->sqrt(F->mul(f.lc(), f.lc())));
        }
    }
}

TEST(Poly, IrreduciblesAndNecklaceCounts)
{
    auto F2 = make_field(2, 1);
    auto irr = monic_irreducibles(*F2, 2);
    ASSERT_EQ(irr.size(), 1u);
    EXPECT_EQ(irr[0].str(), "x^2+x+1");
    EXPECT_EQ(monic_irreducibles(*F2, 3).size(), 2u);
    auto F3 = make_field(3, 1);
    irr = monic_irreducibles(*F3, 1);
    ASSERT_EQ(irr.size(), 3u);
    EXPECT_EQ(irr[0].str(), "x");
    EXPECT_EQ(irr[1].str(), "x+1");
    EXPECT_EQ(irr[2].str(), "x+2");
    for (auto q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        auto F = make_field_q(q);
        for (unsigned n = 1; n <= 6; ++n) {
            std::uint64_t qn = 1;
            for (unsigned i = 0; i < n; ++i) qn *= q;
            if (qn > field_cap()) continue;
            auto list = monic_irreducibles_with_roots(*F, n);
            EXPECT_EQ(static_cast<std::int64_t>(list.size()), necklace_count(q, n)) << "q=" << q << " n=" << n;
            for (std::size_t i = 1; i < list.size(); ++i) EXPECT_TRUE(list[i - 1].first < list[i].first);
            if (n <= 3) {
                auto big = extension(*F, n);
                for (auto &[u, root] : list) {
                    EXPECT_TRUE(is_irreducible(u));
                    EXPECT_EQ(embed(u, *big).eval(root), 0u);
                }
            }
        }
    }
}

TEST(Poly, FactorReassembles)
{
    std::mt19937_64 rng(77);
    for (auto q : {2u, 3u, 4u, 5u, 9u}) {
        auto F = make_field_q(q);
        for (int it = 0; it < 100; ++it) {
            Poly f = random_poly(F.get(), rng, 9);
            if (f.degree() < 1) continue;
            auto fac = factor(f);
            Poly acc = Poly::constant(F.get(), f.lc());
            for (auto &[u, m] : fac) {
                EXPECT_TRUE(is_irreducible(u));
                acc *= pow(u, m);
            }
            EXPECT_EQ(acc, f);
        }
    }
}

TEST(Poly, RootsInExtension)
{
    auto F5 = make_field(5, 1);
    auto r = roots_in(parse_poly(F5.get(), "x^2+1"), *F5);
    EXPECT_EQ(r, (std::vector<elem>{2, 3}));
    auto F2 = make_field(2, 1);
    auto F4 = make_field(2, 2);
    auto r4 = roots_in(parse_poly(F2.get(), "x^2+x+1"), *F4);
    EXPECT_EQ(r4.size(), 2u);
    for (auto a : r4) EXPECT_EQ(minimal_polynomial(a, *F2, *F4).str(), "x^2+x+1");
}
