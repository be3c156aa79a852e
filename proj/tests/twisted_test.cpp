#include <gtest/gtest.h>

#include <set>

#include <tracelab/twisted.hpp>

using namespace tracelab;

namespace {

std::shared_ptr<const EtaleDoubleCover> f5_cover() { return make_etale_double_cover(parse_curve("ell:q=5;a=4;b=0")); }

} // namespace

TEST(TwistedBundles, NormKernelAndComponents)
{
    for (auto s : {"ell:q=5;a=4;b=0", "ell:q=3;a=1;b=0", "ell:q=7;a=1;b=0"}) {
        auto C = make_etale_double_cover(parse_curve(s));
        const auto B = twisted_torus_bundles(C);
        // oracle: points of E' sent to the origin of E
        std::size_t kernel = 0;
        const auto &F = C->base().field();
        for (auto &Q : C->cover().points(F)) kernel += C->map(F, Q).inf ? 1 : 0;
        EXPECT_EQ(B.order(), kernel) << s;
        EXPECT_EQ(B.component_count, 2) << s;
        EXPECT_EQ(B.order(), 2 * B.neutral.size()) << s;
        std::set<int> seen;
        for (int c : B.kernel) seen.insert(B.component(c));
        EXPECT_EQ(seen.size(), 2u);
    }
}

TEST(TwistedBundles, NormOfPullbackIsSquaring)
{
    auto C = f5_cover();
    const auto B = twisted_torus_bundles(C);
    const auto &G = *B.base_pic;
    for (int i = 0; i < static_cast<int>(G.size()); ++i) {
        const Divisor M = detail::elliptic_class_divisor(C->base(), G.elements()[static_cast<std::size_t>(i)]);
        EXPECT_EQ(G.class_of(C->pushforward(C->pullback(M))), G.add(i, i));
    }
}

TEST(HeckeComponents, ShapesAndCounts)
{
    auto C = f5_cover();
    const auto one = hecke_components_H(*C, 1, 3);
    ASSERT_EQ(one.shapes.size(), 2u);
    EXPECT_EQ(one.shapes[0].first, "(1;)");
    EXPECT_EQ(one.shapes[1].first, "(;(1,m))");
    EXPECT_EQ(one.components.size(), 4u);
    EXPECT_TRUE(one.m_independent);
    EXPECT_EQ(one.shapes[0].second, static_cast<std::int64_t>(C->base().point_count(1)));
    EXPECT_EQ(one.shapes[1].second, static_cast<std::int64_t>(C->cover().point_count(1)));

    const auto two = hecke_components_H(*C, 2, 2);
    std::set<std::string> shapes;
    for (auto &[sh, n] : two.shapes) shapes.insert(sh);
    EXPECT_EQ(shapes, (std::set<std::string>{"(2;)", "(1;(1,m))", "(;(2,m))", "(;(1,m1),(1,m2))"}));
    EXPECT_TRUE(two.m_independent);
    for (auto &[sh, n] : two.shapes) {
        if (sh == "(;(2,m))") {
            EXPECT_EQ(static_cast<std::uint64_t>(n), effective_divisor_count(C->cover(), 2));
        }
        if (sh == "(;(1,m1),(1,m2))") {
            EXPECT_EQ(n, 64);
        }
    }
    // (1;(1,1)),(1;(1,2)),(;(2,1)),(;(2,2)),(;(1,1),(1,2)),(2;)
    EXPECT_EQ(two.components.size(), 6u);
}

TEST(RhoH, TrivialParameterGivesZeta)
{
    auto C = f5_cover();
    const auto B = twisted_torus_bundles(C);
    const auto eta = cover_character(*C, *B.base_pic, *B.cover_pic);
    const auto r = rho_H_factorization_check(B, trivial_character(*B.cover_pic), eta, 4);
    EXPECT_TRUE(r.equal);
    const auto L0 = euler_product(*B.base_pic, character_product(eta, eta), 0, 4);
    const auto z = zeta_data(C->base());
    for (unsigned d = 0; d <= 4; ++d) EXPECT_EQ(L0[d], RingElem(z.zeta_coefficient(d)));
}

TEST(RhoH, GenericParametersFactor)
{
    auto C = f5_cover();
    const auto B = twisted_torus_bundles(C);
    const auto thetas = characters(*B.cover_pic, 2);
    const auto Es = characters(*B.base_pic, 1);
    int checked = 0;
    for (std::size_t i = 0; i < thetas.size(); i += 3) {
        for (std::size_t j = 0; j < Es.size(); j += 3) {
            const auto r = rho_H_factorization_check(B, thetas[i], Es[j], 4);
            EXPECT_TRUE(r.equal) << thetas[i].label << " " << Es[j].label;
            ++checked;
        }
    }
    EXPECT_GE(checked, 6);
}

TEST(RhoH, EisensteinFactorization)
{
    auto G = picard_group(parse_curve("ell:q=5;a=4;b=0"));
    const auto all = characters(*G, 2);
    int checked = 0;
    for (std::size_t i = 1; i < all.size() && checked < 5; i += 3) {
        const auto r = eisenstein_factorization_check(G, all[i], 4);
        EXPECT_TRUE(r.equal) << all[i].label;
        ++checked;
    }
    EXPECT_EQ(checked, 5);
}

TEST(TwistedBase, Counts)
{
    auto C = f5_cover();
    const auto B = twisted_torus_bundles(C);
    const auto zX = zeta_data(C->base());
    for (int d1 : {1, 3}) EXPECT_EQ(twisted_hitchin_base_count(B, 2, d1).total, 0);
    const auto zero = twisted_hitchin_base_count(B, 2, 0);
    EXPECT_EQ(zero.kernel_size, 2);
    EXPECT_EQ(zero.divisors, 1);
    EXPECT_EQ(zero.total, 2 * zX.zeta_coefficient(2));
    // every degree-d1 class on the cover has (q^d1 - 1)/(q - 1) effective divisors
    const std::int64_t n_pic = static_cast<std::int64_t>(B.base_pic->size());
    for (auto [d1, per_class] : {std::pair<int, std::int64_t>{2, 6}, {4, 156}}) {
        const auto r = twisted_hitchin_base_count(B, 1, d1);
        EXPECT_EQ(r.pairs, n_pic * per_class);
        EXPECT_EQ(r.pairs, r.divisors * r.kernel_size);
        EXPECT_EQ(r.total, r.pairs * zX.zeta_coefficient(1));
    }
}
