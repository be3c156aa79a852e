#include <gtest/gtest.h>

#include <set>

#include <tracelab/divisor.hpp>

using namespace tracelab;

namespace {

std::uint64_t brute_count(const Curve &X, unsigned n)
{
    // Independent oracle: direct evaluation of y^2 + h y - f over all pairs.
    auto K = X.over(n);
    if (X.is_p1()) return K->q() + 1ull;
    const Poly f = embed(X.f(), *K), h = embed(X.h(), *K);
    std::uint64_t c = 0;
    for (elem x = 0; x < K->q(); ++x) {
        for (elem y = 0; y < K->q(); ++y) {
            if (K->add(K->mul(y, y), K->mul(h.eval(x), y)) == f.eval(x)) ++c;
        }
    }
    if (X.odd_model()) return c + 1;
    if (K->is_square(embed(X.f().lc(), X.field(), *K))) return c + 2;
    return c;
}

} // namespace

TEST(Curve, DescriptorParsing)
{
    EXPECT_EQ(parse_curve("p1:q=3")->descriptor(), "p1:q=3");
    EXPECT_EQ(parse_curve("ell:q=3;a=1;b=0")->descriptor(), "ell:q=3;a=1;b=0");
    EXPECT_EQ(parse_curve("ell:q=5;a=-1;b=0")->descriptor(), "ell:q=5;a=4;b=0");
    EXPECT_EQ(parse_curve("ell2:q=2;f=x^3")->descriptor(), "ell2:q=2;f=x^3");
    auto H = parse_curve("hyp:q=3;f=x^5+x");
    EXPECT_EQ(H->genus(), 2);
    EXPECT_EQ(H->kind(), CurveKind::Hyperelliptic);
    EXPECT_EQ(parse_curve("hyp:q=5;f=x^6+x+1")->genus(), 2);
    EXPECT_EQ(parse_curve("hyp:q=5;f=x^3+2*x")->kind(), CurveKind::Elliptic);
    auto kind_of = [](const std::string &s) {
        try {
            parse_curve(s);
        } catch (const Error &e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };
    EXPECT_EQ(kind_of("ell:q=4;a=..."), ErrorKind::Parse);
    EXPECT_EQ(kind_of("ell:q=3;b=0;a=1"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("p1:q=6"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("ell:q=3;a=0;b=0"), ErrorKind::UnsupportedCurve);
    EXPECT_EQ(kind_of("hyp:q=5;f=x^2*x"), ErrorKind::Parse);
    EXPECT_EQ(kind_of("hyp:q=5;f=x^3+2*x^2+x"), ErrorKind::UnsupportedCurve);
    EXPECT_EQ(kind_of("ell:q=4;a=1;b=1"), ErrorKind::UnsupportedCurve);
    EXPECT_EQ(kind_of("torus:q=3"), ErrorKind::Parse);
}

TEST(Curve, PointCountExamples)
{
    EXPECT_EQ(parse_curve("p1:q=3")->point_count(2), 10u);
    EXPECT_EQ(parse_curve("ell2:q=2;f=x^3")->point_count(1), 3u);
    EXPECT_EQ(parse_curve("ell2:q=2;f=x^3")->point_count(2), 9u);
    EXPECT_EQ(parse_curve("ell:q=3;a=1;b=0")->point_count(1), 4u);
    EXPECT_EQ(parse_curve("ell:q=3;a=1;b=0")->point_count(2), 16u);
    EXPECT_EQ(parse_curve("ell:q=5;a=4;b=0")->point_count(1), 8u);
}

TEST(Curve, PointCountsMatchBruteForce)
{
    for (auto s : {"ell:q=3;a=1;b=0", "ell:q=5;a=1;b=1", "ell2:q=2;f=x^3+x", "hyp:q=3;f=x^5+x", "hyp:q=5;f=2*x^6+x+1", "hyp:q=5;f=x^4+2", "ell2:q=4;f=x^3+2"}) {
        auto X = parse_curve(s);
        for (unsigned n = 1; n <= 3; ++n) EXPECT_EQ(X->point_count(n), brute_count(*X, n)) << s << " n=" << n;
    }
}

TEST(Curve, PlacesOfDegreeExamples)
{
    auto P = parse_curve("p1:q=2");
    auto pl1 = P->places_of_degree(1);
    ASSERT_EQ(pl1.size(), 3u);
    EXPECT_EQ(pl1[0].str(), "x");
    EXPECT_EQ(pl1[1].str(), "x+1");
    EXPECT_EQ(pl1[2].str(), "inf");
    auto pl2 = P->places_of_degree(2);
    ASSERT_EQ(pl2.size(), 1u);
    EXPECT_EQ(pl2[0].str(), "x^2+x+1");
    EXPECT_EQ(parse_curve("ell:q=3;a=1;b=0")->places_of_degree(2).size(), 6u);
}

TEST(Curve, PlaceCountsSumToPointCounts)
{
    for (auto s : {"p1:q=3", "ell:q=3;a=1;b=0", "ell2:q=2;f=x^3", "hyp:q=3;f=x^5+x", "hyp:q=3;f=2*x^6+x+1", "hyp:q=3;f=x^6+x+1", "ell:q=5;a=4;b=0", "ell2:q=4;f=x^3+2"}) {
        auto X = parse_curve(s);
        for (unsigned n = 1; n <= 4; ++n) {
            std::uint64_t total = 0;
            for (unsigned e = 1; e <= n; ++e) {
                if (n % e == 0) total += e * X->places_of_degree(e).size();
            }
            EXPECT_EQ(total, X->point_count(n)) << s << " n=" << n;
        }
    }
}

TEST(Curve, PlacesAreDistinctOrbitsWithCanonicalRepresentatives)
{
    auto X = parse_curve("hyp:q=3;f=2*x^6+x+1");
    for (unsigned n = 1; n <= 4; ++n) {
        auto K = X->over(n);
        std::set<Point> seen;
        for (auto &pl : X->places_of_degree(n)) {
            EXPECT_EQ(pl.degree, static_cast<int>(n));
            EXPECT_TRUE(X->on_curve(*K, pl.rep));
            auto orb = X->orbit_points(pl);
            std::set<Point> o(orb.begin(), orb.end());
            EXPECT_EQ(o.size(), n);
            for (auto &Q : orb) {
                EXPECT_TRUE(seen.insert(Q).second);
                EXPECT_EQ(X->place_of_point(*K, Q), pl);
            }
            EXPECT_EQ(parse_place(*X, pl.str()), pl);
        }
    }
}

TEST(Divisor, TextAndArithmetic)
{
    auto X = parse_curve("p1:q=3");
    Divisor D = parse_divisor(*X, "3*[x]+1*[inf]");
    EXPECT_EQ(D.degree(), 4);
    EXPECT_EQ(D.str(), "3*[x]+1*[inf]");
    Divisor E = D - parse_divisor(*X, "3*[x]");
    EXPECT_EQ(E.str(), "1*[inf]");
    EXPECT_EQ((D - D).str(), "0");
    EXPECT_EQ(parse_divisor(*X, "1*[x+1]-2*[inf]").str(), "1*[x+1]-2*[inf]");
    EXPECT_THROW(parse_divisor(*X, "1*[x^2+1+]"), Error);
    EXPECT_THROW(parse_divisor(*X, "1*[x^2+2*x+1]"), Error);
}

TEST(Divisor, EffectiveDivisorCounts)
{
    auto P2 = parse_curve("p1:q=2");
    EXPECT_EQ(effective_divisors(*P2, 2).size(), 7u);
    auto E = parse_curve("ell:q=3;a=1;b=0");
    auto zero = effective_divisors(*E, 0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].is_zero());
    auto two = effective_divisors(*E, 2);
    EXPECT_EQ(two.size(), 16u);
    std::set<Divisor> uniq(two.begin(), two.end());
    EXPECT_EQ(uniq.size(), 16u);
    for (auto &D : two) {
        EXPECT_TRUE(D.is_effective());
        EXPECT_EQ(D.degree(), 2);
    }
    EXPECT_EQ(effective_divisor_count(*P2, 3), 15u);
    set_enumeration_cap(10);
    EXPECT_THROW(effective_divisors(*P2, 3), Error);
    set_enumeration_cap(20'000'000);
}
