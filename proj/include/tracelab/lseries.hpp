#pragma once

// Rank-1 graded local systems on a curve, their Frobenius data on H^0, H^1,
// H^2, and the L-series computed as an Euler product, as a ratio of
// characteristic polynomials, and through symmetric/exterior powers.

#include <cmath>
#include <string>
#include <vector>

#include "picard.hpp"

namespace tracelab {

/// One rank-1 summand: character, Tate twist (as the v-exponent 2w) and
/// cohomological shift.
struct Summand {
    TorusCharacter chi;
    int twist = 0;
    int shift = 0;
};

struct GradedLocalSystem {
    PicardPtr pic;
    std::vector<Summand> summands;
};

/// det(1 - t Fr | H^degree) of one summand, placed in total degree degree + shift.
struct FrobeniusPiece {
    std::size_t summand = 0;
    int degree = 0;
    int shift = 0;
    RingSeries poly;

    bool odd() const { return ((degree + shift) % 2 + 2) % 2 == 1; }
    int poly_degree() const
    {
        for (std::size_t i = poly.size(); i-- > 0;) {
            if (!poly[i].is_zero()) return static_cast<int>(i);
        }
        return -1;
    }
};

struct FrobeniusDatum {
    std::vector<FrobeniusPiece> pieces;
    std::int64_t q = 0;
};

/// zeta_N^a v^w
inline RingElem unit(int N, long a, int w) { return RingElem::root(N, a, w); }

/// sum over D in X_d of zeta^{chi(D)}, by enumerating effective divisors.
inline RingElem character_sum(const PicardGroup &G, const TorusCharacter &chi, unsigned d)
{
    std::vector<std::int64_t> hist(static_cast<std::size_t>(chi.order), 0);
    for_each_effective_divisor(G.curve(), d, [&](const Divisor &D) { ++hist[static_cast<std::size_t>(chi.value(G, D))]; });
    RingElem s;
    for (int a = 0; a < chi.order; ++a) {
        if (hist[static_cast<std::size_t>(a)]) s += unit(chi.order, a, 0) * RingElem(hist[static_cast<std::size_t>(a)]);
    }
    return s;
}

/// L-polynomial of a geometrically nontrivial character (degree 2g-2), twisted.
inline RingSeries character_l_polynomial(const PicardGroup &G, const TorusCharacter &chi, int twist)
{
    check(!chi.geometrically_trivial(), "L-polynomial needs a geometrically nontrivial character");
    const unsigned top = static_cast<unsigned>(2 * G.curve().genus() - 2);
    RingSeries out;
    for (unsigned d = 0; d <= top; ++d) out.push_back(character_sum(G, chi, d) * RingElem::vpow(twist * static_cast<int>(d)));
    // the sums stop at degree 2g-2
    if (!character_sum(G, chi, top + 1).is_zero()) throw Error(ErrorKind::Internal, "character sums do not terminate at degree " + std::to_string(top));
    return out;
}

inline FrobeniusDatum frobenius_datum(const GradedLocalSystem &sys)
{
    FrobeniusDatum out;
    const auto z = zeta_data(sys.pic->curve());
    out.q = z.q;
    for (std::size_t s = 0; s < sys.summands.size(); ++s) {
        const auto &[chi, tw, sh] = sys.summands[s];
        if (chi.geometrically_trivial()) {
            // Z(zeta^delta v^tw t) with q rendered as v^2
            const RingElem scale = unit(chi.order, chi.degree_value, tw);
            RingSeries h1;
            RingElem sp(1);
            for (auto c : z.numerator) {
                h1.push_back(RingElem(c) * sp);
                sp *= scale;
            }
            out.pieces.push_back({s, 0, sh, {RingElem(1), -scale}});
            out.pieces.push_back({s, 1, sh, h1});
            out.pieces.push_back({s, 2, sh, {RingElem(1), -(scale * RingElem::vpow(2))}});
        } else {
            out.pieces.push_back({s, 0, sh, {RingElem(1)}});
            out.pieces.push_back({s, 1, sh, character_l_polynomial(*sys.pic, chi, tw)});
            out.pieces.push_back({s, 2, sh, {RingElem(1)}});
        }
    }
    return out;
}

/// Euler product over places of degree <= d_max of one character, twisted.
inline RingSeries euler_product(const PicardGroup &G, const TorusCharacter &chi, int twist, unsigned d_max)
{
    const Curve &X = G.curve();
    const std::size_t len = d_max + 1;
    require_within_cap(static_cast<std::uint64_t>(std::pow(static_cast<double>(X.q()), d_max)), "places up to degree " + std::to_string(d_max));
    RingSeries S(len);
    S[0] = RingElem(1);
    for (unsigned e = 1; e <= d_max; ++e) {
        for (const Place &P : X.places_of_degree(e)) {
            const RingElem c = unit(chi.order, chi.value(G, P), twist * static_cast<int>(e));
            // multiply by 1/(1 - c t^e)
            for (std::size_t n = e; n < len; ++n) {
                if (!S[n - e].is_zero()) S[n] += c * S[n - e];
            }
        }
    }
    return S;
}

inline RingSeries l_series_product(const GradedLocalSystem &sys, unsigned d_max)
{
    const std::size_t len = d_max + 1;
    RingSeries out(len);
    out[0] = RingElem(1);
    for (auto &s : sys.summands) {
        RingSeries L = euler_product(*sys.pic, s.chi, s.twist, d_max);
        if (s.shift % 2) L = series_inv(L, len);
        out = series_mul(out, L, len);
    }
    return out;
}

inline RingSeries l_series_cohomological(const FrobeniusDatum &datum, unsigned d_max)
{
    const std::size_t len = d_max + 1;
    RingSeries out(len);
    out[0] = RingElem(1);
    for (auto &pc : datum.pieces) out = series_mul(out, pc.odd() ? pc.poly : series_inv(pc.poly, len), len);
    return out;
}

namespace detail {

// From det(1 - tF) = sum c_k t^k: supertraces on exterior powers ((-1)^k e_k,
// the odd part sits in odd degree) or traces on symmetric powers h_k, up to n.
inline RingSeries power_traces(const RingSeries &c, bool exterior, std::size_t n)
{
    RingSeries out(n + 1);
    if (exterior) {
        for (std::size_t k = 0; k <= n && k < c.size(); ++k) out[k] = c[k];
        return out;
    }
    // Newton: power sums p_k, then k h_k = sum_{i=1}^k p_i h_{k-i}
    RingSeries p(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        RingElem acc = k < c.size() ? c[k] * RingElem(static_cast<std::int64_t>(k)) : RingElem();
        for (std::size_t i = 1; i < k; ++i) {
            if (i < c.size() && !c[i].is_zero()) acc += c[i] * p[k - i];
        }
        p[k] = -acc;
    }
    out[0] = RingElem(1);
    for (std::size_t k = 1; k <= n; ++k) {
        RingElem acc;
        for (std::size_t i = 1; i <= k; ++i) acc += p[i] * out[k - i];
        out[k] = acc.div_exact(static_cast<std::int64_t>(k));
    }
    return out;
}

} // namespace detail

/// Trace of Frobenius on the degree-d part of the symmetric algebra of the
/// graded cohomology (exterior in odd total degree).
inline RingElem sym_power_trace(const FrobeniusDatum &datum, unsigned d)
{
    RingSeries acc(d + 1);
    acc[0] = RingElem(1);
    for (auto &pc : datum.pieces) {
        const RingSeries tr = detail::power_traces(pc.poly, pc.odd(), d);
        RingSeries next(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            if (acc[i].is_zero()) continue;
            for (std::size_t j = 0; i + j <= d; ++j) {
                if (!tr[j].is_zero()) next[i + j] += acc[i] * tr[j];
            }
        }
        acc = std::move(next);
    }
    return acc[d];
}

/// t^d coefficient of prod_i Z(v^{twist_i} t)^{dim_i}; twists are v-exponents (2i).
inline RingElem constant_sheaf_eigenvalue(const std::vector<std::pair<int, int>> &grading, const ZetaData &z, unsigned d)
{
    RingSeries acc(d + 1);
    acc[0] = RingElem(1);
    for (auto &[tw, dim] : grading) {
        RingSeries Z(d + 1);
        for (unsigned n = 0; n <= d; ++n) Z[n] = RingElem::vpow(tw * static_cast<int>(n), z.zeta_coefficient(n));
        for (int k = 0; k < dim; ++k) acc = series_mul(acc, Z, d + 1);
    }
    return acc[d];
}

/// binom(d + m - 1, m - 1): dimension of Sym^d of an m-dimensional space.
inline std::int64_t leading_term_dimension(int m, int d)
{
    check(m >= 1 && d >= 0, "leading term needs m >= 1 and d >= 0");
    std::int64_t r = 1;
    for (int i = 1; i <= m - 1; ++i) r = r * (d + i) / i;
    return r;
}

/// Coefficientwise equality of two series after v^2 -> q.
inline bool series_weight_equal(const RingSeries &a, const RingSeries &b, std::int64_t q)
{
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!weight_equal(i < a.size() ? a[i] : RingElem(), i < b.size() ? b[i] : RingElem(), q)) return false;
    }
    return true;
}

} // namespace tracelab
