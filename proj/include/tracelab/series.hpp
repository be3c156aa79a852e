#pragma once

// Truncated power series over a Field, and local expansions of curve points.

#include <vector>

#include "curve.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace tracelab {

using Series = std::vector<elem>;

inline Series ser_trunc(Series a, std::size_t prec)
{
    a.resize(prec, 0);
    return a;
}

inline Series ser_add(const Field &K, const Series &a, const Series &b, std::size_t prec)
{
    Series r(prec, 0);
    for (std::size_t i = 0; i < prec; ++i) r[i] = K.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return r;
}

inline Series ser_sub(const Field &K, const Series &a, const Series &b, std::size_t prec)
{
    Series r(prec, 0);
    for (std::size_t i = 0; i < prec; ++i) r[i] = K.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return r;
}

inline Series ser_mul(const Field &K, const Series &a, const Series &b, std::size_t prec)
{
    Series r(prec, 0);
    for (std::size_t i = 0; i < a.size() && i < prec; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size() && i + j < prec; ++j) {
            if (b[j]) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
        }
    }
    return r;
}

// Inverse of a series with nonzero constant term.
inline Series ser_inv(const Field &K, const Series &a, std::size_t prec)
{
    check(!a.empty() && a[0] != 0, "series is not a unit");
    Series r(prec, 0);
    const elem i0 = K.inv(a[0]);
    r[0] = i0;
    for (std::size_t n = 1; n < prec; ++n) {
        elem acc = 0;
        for (std::size_t j = 1; j <= n && j < a.size(); ++j) acc = K.add(acc, K.mul(a[j], r[n - j]));
        r[n] = K.neg(K.mul(acc, i0));
    }
    return r;
}

// Coefficients of p(x0 + t).
inline Series taylor_shift(const Poly &p, elem x0, std::size_t prec)
{
    const Field &K = *p.field();
    std::vector<elem> c = p.coeffs();
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) c[j - 1] = K.add(c[j - 1], K.mul(x0, c[j]));
    }
    return ser_trunc(c, prec);
}

// p(S) for a series S.
inline Series poly_at_series(const Poly &p, const Series &S, std::size_t prec)
{
    const Field &K = *p.field();
    Series r(prec, 0);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        r = ser_mul(K, r, S, prec);
        r[0] = K.add(r[0], p.coeffs()[i]);
    }
    return r;
}

inline int ser_order(const Series &a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]) return static_cast<int>(i);
    }
    return -1;
}

/// x and y as power series in a uniformizer at an affine point of X(K).
struct LocalExpansion {
    const Field *K = nullptr;
    bool ramified = false; // uniformizer y - y0 instead of x - x0
    std::size_t prec = 0;
    Series x, y;
};

inline LocalExpansion local_expansion(const Curve &X, const Field &K, const Point &P, std::size_t prec)
{
    check(!P.inf, "local expansion at infinity");
    LocalExpansion L;
    L.K = &K;
    L.prec = prec;
    if (X.is_p1()) {
        L.x = ser_trunc({P.x, 1}, prec);
        L.y = Series(prec, 0);
        return L;
    }
    const Poly fK = embed(X.f(), K), hK = embed(X.h(), K);
    const elem dy = K.add(K.add(P.y, P.y), hK.eval(P.x));
    unsigned steps = 1;
    while ((std::size_t(1) << steps) < prec + 1) ++steps;
    ++steps;
    if (dy != 0) {
        L.x = ser_trunc({P.x, 1}, prec);
        const Series Fs = taylor_shift(fK, P.x, prec), Hs = taylor_shift(hK, P.x, prec);
        Series Y = ser_trunc({P.y}, prec);
        for (unsigned it = 0; it < steps; ++it) {
            Series G = ser_sub(K, ser_add(K, ser_mul(K, Y, Y, prec), ser_mul(K, Hs, Y, prec), prec), Fs, prec);
            Series dG = ser_add(K, ser_add(K, Y, Y, prec), Hs, prec);
            Y = ser_sub(K, Y, ser_mul(K, G, ser_inv(K, dG, prec), prec), prec);
        }
        L.y = Y;
        return L;
    }
    L.ramified = true;
    L.y = ser_trunc({P.y, 1}, prec);
    const Poly df = fK.derivative(), dh = hK.derivative();
    Series Xs = ser_trunc({P.x}, prec);
    for (unsigned it = 0; it < steps; ++it) {
        Series Hx = poly_at_series(hK, Xs, prec), Fx = poly_at_series(fK, Xs, prec);
        Series G = ser_sub(K, ser_add(K, ser_mul(K, L.y, L.y, prec), ser_mul(K, Hx, L.y, prec), prec), Fx, prec);
        Series dG = ser_sub(K, ser_mul(K, poly_at_series(dh, Xs, prec), L.y, prec), poly_at_series(df, Xs, prec), prec);
        Xs = ser_sub(K, Xs, ser_mul(K, G, ser_inv(K, dG, prec), prec), prec);
    }
    L.x = Xs;
    return L;
}

/// a(x) + b(x) y as a series at the expansion point (a, b over the base field).
inline Series expand(const LocalExpansion &L, const Poly &a, const Poly &b)
{
    const Field &K = *L.K;
    Series r = poly_at_series(embed(a, K), L.x, L.prec);
    if (!b.is_zero()) r = ser_add(K, r, ser_mul(K, poly_at_series(embed(b, K), L.x, L.prec), L.y, L.prec), L.prec);
    return r;
}

} // namespace tracelab
