#include <gtest/gtest.h>

#include <random>

#include <tracelab/function.hpp>
#include <tracelab/picard.hpp>

using namespace tracelab;

namespace {

// Chord-and-tangent addition on y^2 = x^3 + a x + b, used as an oracle.
struct Affine {
    bool inf;
    elem x, y;
};

Affine chord_add(const Field &F, elem a, Affine P, Affine Q)
{
    if (P.inf) return Q;
    if (Q.inf) return P;
    elem lam;
    if (P.x == Q.x) {
        if (F.add(P.y, Q.y) == 0) return {true, 0, 0};
        lam = F.div(F.add(F.mul(3 % F.p(), F.mul(P.x, P.x)), a), F.mul(2, P.y));
    } else {
        lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
    }
    const elem x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x);
    return {false, x3, F.sub(F.mul(lam, F.sub(P.x, x3)), P.y)};
}

Mumford to_mumford(const Field &F, Affine P)
{
    if (P.inf) return {Poly::constant(&F, 1), Poly(&F)};
    return {Poly::linear(&F, P.x), Poly::constant(&F, P.y)};
}

} // namespace

TEST(Picard, StructureExamples)
{
    auto P = picard_group(parse_curve("p1:q=5"));
    EXPECT_EQ(P->size(), 1u);
    EXPECT_EQ(P->structure(), "0");
    auto E = picard_group(parse_curve("ell:q=3;a=1;b=0"));
    EXPECT_EQ(E->structure(), "Z/4");
    const auto &J = E->jacobian();
    const Field &F = E->curve().field();
    Mumford pt{Poly::linear(&F, 2), Poly::constant(&F, 1)};
    ASSERT_TRUE(J.is_valid(pt));
    EXPECT_EQ(J.add(pt, pt), (Mumford{Poly::x(&F), Poly(&F)}));
    EXPECT_TRUE(J.mul(pt, 4).is_zero());
    EXPECT_FALSE(J.mul(pt, 2).is_zero());
    EXPECT_EQ(picard_group(parse_curve("ell2:q=2;f=x^3"))->structure(), "Z/3");
    EXPECT_THROW(picard_group(parse_curve("hyp:q=5;f=x^6+x+1")), Error);
}

TEST(Picard, OrderMatchesZetaAndGroupAxioms)
{
    for (auto s : {"ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0", "ell:q=7;a=1;b=3", "ell2:q=2;f=x^3", "ell2:q=4;f=x^3+x", "hyp:q=3;f=x^5+x", "hyp:q=3;f=x^5+2*x", "hyp:q=5;f=x^5+x+2", "hyp:q=5;f=2*x^3+x"}) {
        auto G = picard_group(parse_curve(s));
        EXPECT_EQ(static_cast<std::int64_t>(G->size()), zeta_data(G->curve()).at_one()) << s;
        const int n = static_cast<int>(G->size());
        for (auto &D : G->elements()) EXPECT_TRUE(G->jacobian().is_valid(D)) << s << " " << D.str();
        for (int a = 0; a < n; ++a) {
            EXPECT_EQ(G->add(a, 0), a);
            EXPECT_EQ(G->add(a, G->neg(a)), 0);
            for (int b = 0; b < n; ++b) {
                const int ab = G->add(a, b);
                EXPECT_EQ(ab, G->add(b, a));
                // coordinates form a homomorphism
                for (std::size_t i = 0; i < G->invariants().size(); ++i) {
                    EXPECT_EQ(G->coordinates(ab)[i], (G->coordinates(a)[i] + G->coordinates(b)[i]) % G->invariants()[i]);
                }
                if (n <= 30) {
                    for (int c = 0; c < n; ++c) EXPECT_EQ(G->add(ab, c), G->add(a, G->add(b, c)));
                }
            }
        }
        std::set<std::vector<int>> seen;
        for (int a = 0; a < n; ++a) seen.insert(G->coordinates(a));
        EXPECT_EQ(static_cast<int>(seen.size()), n) << s;
    }
}

TEST(Picard, EllipticAdditionMatchesChordAndTangent)
{
    for (auto [q, a, b] : {std::tuple{3, 1, 0}, {5, 1, 1}, {7, 3, 2}, {9, 1, 1}}) {
        auto X = make_short_weierstrass(make_field_q(q), static_cast<elem>(a), static_cast<elem>(b));
        auto G = picard_group(X);
        const Field &F = X->field();
        std::vector<Affine> pts{{true, 0, 0}};
        for (auto &P : X->points(F)) {
            if (!P.inf) pts.push_back({false, P.x, P.y});
        }
        for (auto &P : pts) {
            for (auto &Q : pts) {
                const auto R = chord_add(F, static_cast<elem>(a), P, Q);
                EXPECT_EQ(G->jacobian().add(to_mumford(F, P), to_mumford(F, Q)), to_mumford(F, R));
            }
        }
    }
}

TEST(Picard, PrincipalDivisorsHaveTrivialClass)
{
    std::mt19937_64 rng(17);
    for (auto s : {"ell:q=3;a=1;b=0", "ell:q=5;a=1;b=1", "ell2:q=2;f=x^3+x", "hyp:q=3;f=x^5+x", "hyp:q=5;f=x^5+x+2"}) {
        auto X = parse_curve(s);
        auto G = picard_group(X);
        const Field *F = &X->field();
        for (int it = 0; it < 30; ++it) {
            auto rp = [&](int maxd) {
                std::vector<elem> c(rng() % (maxd + 1) + 1);
                for (auto &v : c) v = static_cast<elem>(rng() % F->q());
                return Poly(F, c);
            };
            Poly a = rp(2), b = rp(1), den = rp(1);
            if (den.is_zero() || (a.is_zero() && b.is_zero())) continue;
            auto D = divisor_of_function(*X, make_function(*X, a, b, den));
            EXPECT_EQ(G->class_of(D), 0) << s << " " << D.str();
        }
        // classes of places add up: class(P + Q) = class(P) + class(Q)
        std::vector<Place> pl;
        for (unsigned e = 1; e <= 3; ++e) {
            for (auto &p : X->places_of_degree(e)) pl.push_back(p);
        }
        for (int it = 0; it < 30; ++it) {
            const auto &P = pl[rng() % pl.size()], &Q = pl[rng() % pl.size()];
            EXPECT_EQ(G->class_of(Divisor(P) + Divisor(Q)), G->add(G->class_of_place(P), G->class_of_place(Q)));
        }
    }
}

TEST(Characters, CountsAndOrthogonality)
{
    auto P = picard_group(parse_curve("p1:q=3"));
    auto cp = characters(*P, 1);
    ASSERT_EQ(cp.size(), 1u);
    EXPECT_TRUE(cp[0].trivial());
    auto E = picard_group(parse_curve("ell:q=3;a=1;b=0"));
    EXPECT_EQ(characters(*E, 1).size(), 4u);
    EXPECT_EQ(characters(*E, 2).size(), 8u);
    for (auto s : {"ell:q=3;a=1;b=0", "ell:q=5;a=4;b=0", "hyp:q=3;f=x^5+x", "ell2:q=4;f=x^3+x"}) {
        auto G = picard_group(parse_curve(s));
        for (auto &chi : characters(*G, 1)) {
            RingElem sum;
            for (int c = 0; c < static_cast<int>(G->size()); ++c) sum += RingElem::root(chi.order, chi.value(*G, c, 0));
            if (chi.geometrically_trivial()) EXPECT_EQ(sum, RingElem(static_cast<std::int64_t>(G->size())));
            else EXPECT_TRUE(sum.is_zero()) << s << " " << chi.label;
            // additivity on classes
            for (int a = 0; a < static_cast<int>(G->size()); ++a) {
                for (int b = 0; b < static_cast<int>(G->size()); ++b) {
                    EXPECT_EQ(chi.value(*G, G->add(a, b), 0), (chi.value(*G, a, 0) + chi.value(*G, b, 0)) % chi.order);
                }
            }
        }
    }
}
