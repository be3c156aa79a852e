#include <gtest/gtest.h>

#include <random>

#include <tracelab/function.hpp>

using namespace tracelab;

namespace {

// g lies in L(D) iff div(g) + D >= 0.
bool in_space(const Curve &X, const Function &g, const Divisor &D)
{
    return (divisor_of_function(X, g) + D).is_effective();
}

Function random_function(const Curve &X, std::mt19937_64 &rng)
{
    const Field *F = &X.field();
    auto rp = [&](int maxd) {
        std::vector<elem> c(rng() % (maxd + 1) + 1);
        for (auto &v : c) v = static_cast<elem>(rng() % F->q());
        return Poly(F, c);
    };
    while (true) {
        Poly a = rp(2), b = X.is_p1() ? Poly(F) : rp(1), den = rp(2);
        if (den.is_zero() || (a.is_zero() && b.is_zero())) continue;
        return make_function(X, a, b, den);
    }
}

} // namespace

TEST(Function, DivisorExamplesOnP1)
{
    auto X = parse_curve("p1:q=5");
    const Field *F = &X->field();
    EXPECT_EQ(divisor_of_function(*X, make_function(*X, parse_poly(F, "x-1"))).str(), "1*[x+4]-1*[inf]");
    auto g = make_function(*X, parse_poly(F, "x^2+1"), Poly(F), parse_poly(F, "x"));
    EXPECT_EQ(divisor_of_function(*X, g).str(), "-1*[x]+1*[x+2]+1*[x+3]-1*[inf]");
    auto X2 = parse_curve("p1:q=2");
    EXPECT_EQ(divisor_of_function(*X2, make_function(*X2, parse_poly(&X2->field(), "x^2+x+1"))).str(), "1*[x^2+x+1]-2*[inf]");
    EXPECT_THROW(divisor_of_function(*X, make_function(*X, Poly(F))), Error);
}

TEST(Function, PrincipalDivisorsHaveDegreeZero)
{
    std::mt19937_64 rng(3);
    for (auto s : {"p1:q=3", "ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0", "ell2:q=2;f=x^3", "ell2:q=4;f=x^3+x", "hyp:q=3;f=x^5+x", "hyp:q=5;f=x^6+x+1", "hyp:q=3;f=2*x^6+x+1"}) {
        auto X = parse_curve(s);
        for (int it = 0; it < 25; ++it) {
            auto g = random_function(*X, rng);
            auto D = divisor_of_function(*X, g);
            EXPECT_EQ(D.degree(), 0) << s << " " << g.str() << " -> " << D.str();
            // multiplicativity
            auto h = random_function(*X, rng);
            EXPECT_EQ(divisor_of_function(*X, mul(*X, g, h)), D + divisor_of_function(*X, h)) << s;
            EXPECT_EQ(divisor_of_function(*X, inverse(*X, g)), -1 * D) << s;
        }
    }
}

TEST(Function, EllipticCoordinateDivisors)
{
    auto E = parse_curve("ell:q=3;a=1;b=0");
    const Field *F = &E->field();
    // x vanishes doubly at the 2-torsion point (0,0)
    EXPECT_EQ(divisor_of_function(*E, make_function(*E, parse_poly(F, "x"))).str(), "2*[x|0]-2*[inf]");
    // y vanishes at the three 2-torsion points: (0,0) and the degree-2 place x^2+1
    EXPECT_EQ(divisor_of_function(*E, make_function(*E, Poly(F), Poly::constant(F, 1))).str(), "1*[x|0]+1*[x^2+1|0]-3*[inf]");
}

TEST(RiemannRoch, Examples)
{
    auto P = parse_curve("p1:q=3");
    auto inf = P->infinity_place();
    auto L = riemann_roch_space(*P, Divisor(inf, 3));
    ASSERT_EQ(L.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(L[i].str(), i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
    auto P5 = parse_curve("p1:q=5");
    auto L2 = riemann_roch_space(*P5, parse_divisor(*P5, "1*[x]+1*[inf]"));
    ASSERT_EQ(L2.size(), 3u);
    EXPECT_EQ(L2[0].str(), "(1)/(x)");
    EXPECT_EQ(L2[1].str(), "1");
    EXPECT_EQ(L2[2].str(), "x");
    auto E = parse_curve("ell:q=3;a=1;b=0");
    auto LE = riemann_roch_space(*E, Divisor(E->infinity_place(), 2));
    ASSERT_EQ(LE.size(), 2u);
    EXPECT_EQ(LE[0].str(), "1");
    EXPECT_EQ(LE[1].str(), "x");
    auto H = parse_curve("hyp:q=3;f=x^5+x");
    EXPECT_THROW(riemann_roch_space(*H, Divisor(H->places_of_degree(1).front(), 1)), Error);
}

TEST(RiemannRoch, DimensionsAndMembership)
{
    std::mt19937_64 rng(9);
    for (auto s : {"p1:q=3", "ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0", "ell2:q=2;f=x^3", "ell2:q=4;f=x^3+x"}) {
        auto X = parse_curve(s);
        const int g = X->genus();
        std::vector<Place> places;
        for (unsigned e = 1; e <= 2; ++e) {
            for (auto &p : X->places_of_degree(e)) places.push_back(p);
        }
        for (int it = 0; it < 30; ++it) {
            Divisor D;
            const int terms = 1 + static_cast<int>(rng() % 3);
            for (int t = 0; t < terms; ++t) D.add(places[rng() % places.size()], static_cast<int>(rng() % 5) - 1);
            auto L = riemann_roch_space(*X, D);
            const long deg = D.degree();
            if (deg > 2 * g - 2) EXPECT_EQ(static_cast<long>(L.size()), deg + 1 - g) << s << " " << D.str();
            if (deg < 0) EXPECT_EQ(L.size(), 0u);
            std::uint64_t qd = 1;
            for (long i = 0; i < 2 * (deg + 2) && qd <= field_cap(); ++i) qd *= X->q();
            if (qd > field_cap()) continue;
            for (auto &f : L) EXPECT_TRUE(in_space(*X, f, D)) << s << " " << D.str() << " " << f.str();
        }
        EXPECT_EQ(riemann_roch_space(*X, Divisor()).size(), 1u);
    }
}

TEST(RiemannRoch, HyperellipticAtInfinity)
{
    auto H = parse_curve("hyp:q=3;f=x^5+x");
    auto inf = H->infinity_place();
    for (int n = 0; n <= 8; ++n) {
        auto L = riemann_roch_space(*H, Divisor(inf, n));
        if (n > 2) EXPECT_EQ(static_cast<int>(L.size()), n - 1);
        for (auto &f : L) EXPECT_TRUE(in_space(*H, f, Divisor(inf, n)));
    }
    auto H6 = parse_curve("hyp:q=5;f=x^6+x+1");
    std::vector<Place> infs;
    for (auto &p : H6->places_of_degree(1)) {
        if (p.inf) infs.push_back(p);
    }
    ASSERT_EQ(infs.size(), 2u);
    for (int a = 0; a <= 4; ++a) {
        Divisor D = Divisor(infs[0], a) + Divisor(infs[1], a);
        auto L = riemann_roch_space(*H6, D);
        if (2 * a > 2) EXPECT_EQ(static_cast<int>(L.size()), 2 * a - 1);
        for (auto &f : L) EXPECT_TRUE(in_space(*H6, f, D));
    }
    EXPECT_THROW(riemann_roch_space(*H6, Divisor(infs[0], 2)), Error);
}
