#pragma once

// The twisted torus H attached to an etale double cover X' -> X: its bundles
// (norm-one classes on X'), Hecke component shapes, L-series factorizations of
// the restricted three-dimensional representation, and base point counts.

#include <algorithm>
#include <string>
#include <vector>

#include "cover.hpp"
#include "lseries.hpp"

namespace tracelab {

struct TwistedTorusBundleSet {
    std::shared_ptr<const EtaleDoubleCover> cover;
    PicardPtr base_pic, cover_pic;
    std::vector<int> kernel;  // classes of Pic^0(X') with trivial norm
    std::vector<int> neutral; // (1 - iota) Pic^0(X')
    std::vector<int> other;   // (1 - iota)[degree-1 class] + neutral
    int component_count = 0;

    std::size_t order() const { return kernel.size(); }

    /// 0 on the neutral component, 1 on the other.
    int component(int cls) const
    {
        if (std::binary_search(neutral.begin(), neutral.end(), cls)) return 0;
        if (std::binary_search(other.begin(), other.end(), cls)) return 1;
        throw Error(ErrorKind::Internal, "class is not norm-one");
    }
};

namespace detail {

// Degree-0 divisor [Q] - [inf] for the class of an elliptic Mumford pair.
inline Divisor elliptic_class_divisor(const Curve &X, const Mumford &m)
{
    Divisor D;
    if (m.is_zero()) return D;
    check(m.u.degree() == 1, "expected a degree-1 Mumford pair");
    D.add(X.place_of_point(X.field(), Point{false, X.field().neg(m.u[0]), m.v[0]}), 1);
    D.add(X.infinity_place(), -1);
    return D;
}

} // namespace detail

inline TwistedTorusBundleSet twisted_torus_bundles(std::shared_ptr<const EtaleDoubleCover> C)
{
    TwistedTorusBundleSet B;
    B.cover = C;
    B.base_pic = picard_group(C->base_ptr());
    B.cover_pic = picard_group(C->cover_ptr());
    const PicardGroup &G = *B.base_pic, &H = *B.cover_pic;
    const Curve &Xp = C->cover();
    std::vector<char> in_neutral(H.size(), 0);
    for (int i = 0; i < static_cast<int>(H.size()); ++i) {
        const Divisor D = detail::elliptic_class_divisor(Xp, H.elements()[static_cast<std::size_t>(i)]);
        if (G.class_of(C->pushforward(D)) == 0) B.kernel.push_back(i);
        Divisor diff = D;
        const Divisor moved = C->involution(D);
        for (auto &[y, n] : moved.terms()) diff.add(y, -n);
        in_neutral[static_cast<std::size_t>(H.class_of(diff))] = 1;
    }
    for (int i = 0; i < static_cast<int>(H.size()); ++i) {
        if (in_neutral[static_cast<std::size_t>(i)]) B.neutral.push_back(i);
    }
    // (1 - iota) of the degree-1 class at infinity
    Divisor O(Xp.infinity_place(), 1);
    const Divisor moved = C->involution(O);
    for (auto &[y, n] : moved.terms()) O.add(y, -n);
    const int shift = H.class_of(O);
    for (int c : B.neutral) B.other.push_back(H.add(c, shift));
    std::sort(B.other.begin(), B.other.end());
    const bool disjoint = std::find(B.neutral.begin(), B.neutral.end(), shift) == B.neutral.end();
    B.component_count = disjoint ? 2 : 1;
    // both components lie in the kernel and exhaust it
    std::vector<int> both = B.neutral;
    both.insert(both.end(), B.other.begin(), B.other.end());
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    check(both == B.kernel, "norm-one classes are not the union of the two components");
    check(B.component_count == 2, "component group is not Z/2");
    check(B.kernel.size() == static_cast<std::size_t>(B.component_count) * B.neutral.size(), "neutral component does not have index 2");
    return B;
}

/// One component of the degree-d Hecke stack: d0 points of X, then parts
/// (d_i, m_i) of X' with strictly increasing m_i.
struct HeckeComponent {
    int d0 = 0;
    std::vector<std::pair<int, int>> parts;
    std::int64_t count = 0; // points per class of Bun_H

    std::string str() const
    {
        std::string s = "(" + (d0 ? std::to_string(d0) : std::string()) + ";";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + ("(" + std::to_string(parts[i].first) + "," + std::to_string(parts[i].second) + ")");
        return s + ")";
    }

    /// With the m_i replaced by symbols.
    std::string shape() const
    {
        std::string s = "(" + (d0 ? std::to_string(d0) : std::string()) + ";";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::string m = parts.size() == 1 ? "m" : "m" + std::to_string(i + 1);
            s += (i ? "," : "") + ("(" + std::to_string(parts[i].first) + "," + m + ")");
        }
        return s + ")";
    }
};

struct HeckeComponentList {
    std::vector<HeckeComponent> components;
    std::vector<std::pair<std::string, std::int64_t>> shapes; // symbolic shape -> count
    bool m_independent = true;
};

inline HeckeComponentList hecke_components_H(const EtaleDoubleCover &C, int d, int m_max)
{
    check(d >= 1, "degree must be positive");
    check(m_max >= 1, "m_max must be positive");
    const auto zX = zeta_data(C.base()), zY = zeta_data(C.cover());
    HeckeComponentList out;
    std::vector<std::pair<int, int>> parts;
    // place parts with weights above `m_prev` and total degree `left`
    auto rec = [&](auto &&self, int d0, int left, int m_prev) -> void {
        if (left == 0) {
            HeckeComponent c;
            c.d0 = d0;
            c.parts = parts;
            c.count = zX.zeta_coefficient(static_cast<unsigned>(d0));
            for (auto &[di, mi] : parts) c.count = detail::checked_mul(c.count, zY.zeta_coefficient(static_cast<unsigned>(di)));
            out.components.push_back(std::move(c));
            return;
        }
        for (int m = m_prev + 1; m <= m_max; ++m) {
            for (int di = 1; di <= left; ++di) {
                parts.emplace_back(di, m);
                self(self, d0, left - di, m);
                parts.pop_back();
            }
        }
    };
    for (int d0 = d; d0 >= 0; --d0) rec(rec, d0, d - d0, 0);
    for (auto &c : out.components) {
        const std::string sh = c.shape();
        auto it = std::find_if(out.shapes.begin(), out.shapes.end(), [&](auto &p) { return p.first == sh; });
        if (it == out.shapes.end()) {
            out.shapes.emplace_back(sh, c.count);
        } else if (it->second != c.count) {
            out.m_independent = false;
        }
    }
    return out;
}

struct FactorizationResult {
    RingSeries direct, factored;
    bool equal = false;
};

namespace detail {

// S *= 1/(1 - c t^e), truncated to S.size()
inline void euler_factor(RingSeries &S, const RingElem &c, std::size_t e)
{
    for (std::size_t n = e; n < S.size(); ++n) {
        if (!S[n - e].is_zero()) S[n] += c * S[n - e];
    }
}

} // namespace detail

/// L-series of the three-dimensional representation restricted to the
/// twisted torus, from its Euler factors over X, against the product of the
/// L-series of E * E_H over X and of theta over X'.
inline FactorizationResult rho_H_factorization_check(const TwistedTorusBundleSet &B, const TorusCharacter &theta, const TorusCharacter &E, unsigned d_max)
{
    const EtaleDoubleCover &C = *B.cover;
    const PicardGroup &G = *B.base_pic, &H = *B.cover_pic;
    const std::size_t len = d_max + 1;
    FactorizationResult r;
    r.direct.assign(len, RingElem());
    r.direct[0] = RingElem(1);
    for (unsigned e = 1; e <= d_max; ++e) {
        for (const Place &x : C.base().places_of_degree(e)) {
            const int split = C.splitting(x);
            const RingElem ex = unit(E.order, E.value(G, x), 0) * unit(2, split, 0);
            detail::euler_factor(r.direct, ex, e);
            for (const Place &y : C.places_over(x)) detail::euler_factor(r.direct, unit(theta.order, theta.value(H, y), 0), static_cast<std::size_t>(y.degree));
        }
    }
    const TorusCharacter eta = cover_character(C, G, H);
    r.factored = series_mul(euler_product(G, character_product(E, eta), 0, d_max), euler_product(H, theta, 0, d_max), len);
    r.equal = r.direct.size() == r.factored.size() && std::equal(r.direct.begin(), r.direct.end(), r.factored.begin());
    return r;
}

/// Split parameter E1 + E1^{-1} + trivial on X: Euler product against the
/// ratio of characteristic polynomials of the three summands.
inline FactorizationResult eisenstein_factorization_check(const PicardPtr &G, const TorusCharacter &E1, unsigned d_max)
{
    FactorizationResult r;
    const std::size_t len = d_max + 1;
    r.direct.assign(len, RingElem());
    r.direct[0] = RingElem(1);
    const TorusCharacter inv = E1.power(-1);
    for (unsigned e = 1; e <= d_max; ++e) {
        for (const Place &x : G->curve().places_of_degree(e)) {
            detail::euler_factor(r.direct, RingElem(1), e);
            detail::euler_factor(r.direct, unit(E1.order, E1.value(*G, x), 0), e);
            detail::euler_factor(r.direct, unit(inv.order, inv.value(*G, x), 0), e);
        }
    }
    GradedLocalSystem sys{G, {{E1, 0, 0}, {inv, 0, 0}, {trivial_character(*G), 0, 0}}};
    r.factored = l_series_cohomological(frobenius_datum(sys), d_max);
    r.equal = series_weight_equal(r.direct, r.factored, static_cast<std::int64_t>(G->curve().q()));
    return r;
}

struct TwistedBaseCount {
    std::int64_t pairs = 0;         // (D1, M) with O(D1) = pi^* M
    std::int64_t divisors = 0;      // D1 whose class is a pullback
    std::int64_t kernel_size = 0;   // classes of Pic^0(X) killed by pi^*
    std::int64_t base_factor = 0;   // #X_{d0}
    std::int64_t total = 0;         // pairs * #X_{d0}
};

inline TwistedBaseCount twisted_hitchin_base_count(const TwistedTorusBundleSet &B, int d0, int d1)
{
    check(d0 >= 0 && d1 >= 0, "degrees must be nonnegative");
    const EtaleDoubleCover &C = *B.cover;
    const PicardGroup &G = *B.base_pic, &H = *B.cover_pic;
    TwistedBaseCount r;
    r.base_factor = zeta_data(C.base()).zeta_coefficient(static_cast<unsigned>(d0));
    if (d1 % 2) return r;
    // class in Pic(X') of pi^* M for each M in Pic_{d1/2}(X)
    std::vector<int> pulled;
    const Place inf = C.base().infinity_place();
    for (const Mumford &m : G.elements()) {
        Divisor M = detail::elliptic_class_divisor(C.base(), m);
        M.add(inf, d1 / 2);
        pulled.push_back(H.class_of(C.pullback(M)));
    }
    for (const Mumford &m : G.elements()) {
        if (H.class_of(C.pullback(detail::elliptic_class_divisor(C.base(), m))) == 0) ++r.kernel_size;
    }
    for_each_effective_divisor(C.cover(), static_cast<unsigned>(d1), [&](const Divisor &D1) {
        const int c = H.class_of(D1);
        const auto hits = std::count(pulled.begin(), pulled.end(), c);
        r.pairs += hits;
        r.divisors += hits ? 1 : 0;
    });
    r.total = detail::checked_mul(r.pairs, r.base_factor);
    return r;
}

} // namespace tracelab
