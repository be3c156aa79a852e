#pragma once

// Function-field elements (a + b y)/den, principal divisors and Riemann-Roch spaces.

#include <algorithm>
#include <string>
#include <vector>

#include "curve.hpp"
#include "divisor.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "series.hpp"

namespace tracelab {

/// (a + b y) / den with a, b, den over the base field; den monic.
struct Function {
    Poly a, b, den;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    std::string str() const
    {
        std::string num;
        if (b.is_zero()) {
            num = a.str();
        } else if (a.is_zero()) {
            num = "(" + b.str() + ")*y";
        } else {
            num = a.str() + "+(" + b.str() + ")*y";
        }
        if (den.is_one()) return num;
        return "(" + num + ")/(" + den.str() + ")";
    }

    friend bool operator==(const Function &u, const Function &v) { return u.a == v.a && u.b == v.b && u.den == v.den; }
};

inline Function normalize(Function g)
{
    if (g.den.is_zero()) throw Error(ErrorKind::ZeroFunction, "zero denominator");
    if (g.is_zero()) return Function{g.a, g.b, Poly::constant(g.den.field(), 1)};
    Poly c = gcd(gcd(g.a, g.b), g.den);
    if (c.degree() > 0) {
        g.a = g.a / c;
        g.b = g.b / c;
        g.den = g.den / c;
    }
    const elem li = g.den.field()->inv(g.den.lc());
    return Function{g.a.scale(li), g.b.scale(li), g.den.scale(li)};
}

inline Function make_function(const Curve &X, const Poly &a, const Poly &b = Poly(), const Poly &den = Poly())
{
    const Field *F = &X.field();
    return normalize(Function{a.field() ? a : Poly(F), b.field() ? b : Poly(F), den.field() ? den : Poly::constant(F, 1)});
}

inline Function constant_function(const Curve &X, elem c) { return make_function(X, Poly::constant(&X.field(), c)); }

inline Function add(const Curve &, const Function &u, const Function &v)
{
    return normalize(Function{u.a * v.den + v.a * u.den, u.b * v.den + v.b * u.den, u.den * v.den});
}

inline Function sub(const Curve &, const Function &u, const Function &v)
{
    return normalize(Function{u.a * v.den - v.a * u.den, u.b * v.den - v.b * u.den, u.den * v.den});
}

inline Function scale(const Function &u, elem c)
{
    return normalize(Function{u.a.scale(c), u.b.scale(c), u.den});
}

inline Function mul(const Curve &X, const Function &u, const Function &v)
{
    // y^2 = f - h y
    const Poly bb = u.b * v.b;
    Poly a = u.a * v.a + bb * X.f();
    Poly b = u.a * v.b + u.b * v.a - bb * X.h();
    return normalize(Function{a, b, u.den * v.den});
}

/// N(a + b y) = a^2 - h a b - f b^2.
inline Poly norm_numerator(const Curve &X, const Poly &a, const Poly &b)
{
    if (b.is_zero()) return a * a;
    return a * a - X.h() * a * b - X.f() * b * b;
}

inline Function inverse(const Curve &X, const Function &u)
{
    if (u.is_zero()) throw Error(ErrorKind::ZeroFunction, "inverse of zero");
    const Poly N = norm_numerator(X, u.a, u.b);
    // (a + b y)^(-1) = (a - h b - b y) / N
    return normalize(Function{(u.a - X.h() * u.b) * u.den, -(u.b * u.den), N});
}

namespace detail {

/// Places lying over the zeros of the irreducible polynomial pi.
inline std::vector<Place> places_over(const Curve &X, const Poly &pi)
{
    const unsigned m = static_cast<unsigned>(pi.degree());
    auto K = X.over(m);
    const elem x0 = roots_in(pi, *K).front();
    if (X.is_p1()) return {X.place_of_point(*K, Point{false, x0, 0})};
    auto ys = Curve::solve_y(*K, embed(X.f(), *K).eval(x0), embed(X.h(), *K).eval(x0));
    std::vector<Place> out;
    if (!ys.empty()) {
        for (elem y : ys) out.push_back(X.place_of_point(*K, Point{false, x0, y}));
        return out;
    }
    auto K2 = X.over(2 * m);
    const elem x2 = roots_in(pi, *K2).front();
    auto ys2 = Curve::solve_y(*K2, embed(X.f(), *K2).eval(x2), embed(X.h(), *K2).eval(x2));
    check(!ys2.empty(), "fibre empty over quadratic extension");
    out.push_back(X.place_of_point(*K2, Point{false, x2, ys2.front()}));
    return out;
}

inline int multiplicity_in(const Poly &g, const Poly &pi)
{
    int m = 0;
    Poly r = g;
    while (!r.is_zero()) {
        auto [qq, rem] = divmod(r, pi);
        if (!rem.is_zero()) break;
        r = qq;
        ++m;
    }
    return m;
}

/// Ramification index of X -> P^1 at an affine place.
inline int ramification(const Curve &X, const Place &P)
{
    if (X.is_p1() || P.full) return 1;
    auto K = X.over(static_cast<unsigned>(P.degree));
    const elem dy = K->add(K->add(P.rep.y, P.rep.y), embed(X.h(), *K).eval(P.rep.x));
    return dy == 0 ? 2 : 1;
}

/// Order of a + b y at an affine place (numerator only).
inline int order_at(const Curve &X, const Place &P, const Poly &a, const Poly &b)
{
    if (b.is_zero()) return ramification(X, P) * multiplicity_in(a, P.u);
    const Poly N = norm_numerator(X, a, b);
    const std::size_t prec = 2 * static_cast<std::size_t>(std::max(0, N.degree())) + 3;
    auto K = X.over(static_cast<unsigned>(P.degree));
    auto L = local_expansion(X, *K, P.rep, prec);
    const int o = ser_order(expand(L, a, b));
    check(o >= 0, "valuation exceeded expansion precision");
    return o;
}

/// Series of a + b y at the infinity branch s (even-degree model, h = 0), in t = 1/x,
/// multiplied by t^shift; returns the order at that branch.
inline int order_at_even_infinity(const Curve &X, elem s, const Poly &a, const Poly &b)
{
    const Field &F = X.field();
    const int g1 = X.genus() + 1;
    const int da = a.degree(), db = b.is_zero() ? -1 : b.degree() + g1;
    const int shift = std::max(da, db);
    const Poly N = norm_numerator(X, a, b);
    const std::size_t prec = static_cast<std::size_t>(shift + std::max(0, N.degree()) + 3);
    // W(t)^2 = t^(2g+2) f(1/t), W(0) = s
    Series rev(prec, 0);
    const int df = X.f().degree();
    for (int i = 0; i <= df; ++i) {
        const std::size_t idx = static_cast<std::size_t>(2 * g1 - i);
        if (idx < prec) rev[idx] = X.f()[static_cast<std::size_t>(i)];
    }
    Series W = ser_trunc({s}, prec);
    for (int it = 0; it < 40 && (std::size_t(1) << std::min(it, 30)) <= 2 * prec; ++it) {
        Series G = ser_sub(F, ser_mul(F, W, W, prec), rev, prec);
        Series dG = ser_add(F, W, W, prec);
        W = ser_sub(F, W, ser_mul(F, G, ser_inv(F, dG, prec), prec), prec);
    }
    Series acc(prec, 0);
    for (int i = 0; i <= da; ++i) {
        const std::size_t idx = static_cast<std::size_t>(shift - i);
        if (idx < prec) acc[idx] = F.add(acc[idx], a[static_cast<std::size_t>(i)]);
    }
    if (!b.is_zero()) {
        Series bs(prec, 0);
        for (int i = 0; i <= b.degree(); ++i) {
            const std::size_t idx = static_cast<std::size_t>(shift - g1 - i);
            if (idx < prec) bs[idx] = b[static_cast<std::size_t>(i)];
        }
        acc = ser_add(F, acc, ser_mul(F, bs, W, prec), prec);
    }
    const int o = ser_order(acc);
    check(o >= 0, "valuation at infinity exceeded precision");
    return o - shift;
}

} // namespace detail

/// div(a + b y) as a divisor (numerator part only, poles at infinity included).
inline Divisor divisor_of_numerator(const Curve &X, const Poly &a, const Poly &b)
{
    Divisor D;
    const Poly N = X.is_p1() ? a : norm_numerator(X, a, b);
    if (N.is_zero()) throw Error(ErrorKind::ZeroFunction, "divisor of the zero function");
    for (auto &[pi, m] : factor(N)) {
        (void)m;
        for (auto &P : detail::places_over(X, pi)) D.add(P, detail::order_at(X, P, a, b));
    }
    if (X.is_p1()) {
        D.add(X.infinity_place(), -a.degree());
    } else if (X.odd_model()) {
        const int pa = a.is_zero() ? -1 : 2 * a.degree();
        const int pb = b.is_zero() ? -1 : 2 * b.degree() + 2 * X.genus() + 1;
        D.add(X.infinity_place(), -std::max(pa, pb));
    } else {
        auto inf1 = X.places_of_degree(1);
        std::vector<Place> infs;
        for (auto &P : inf1) {
            if (P.inf) infs.push_back(P);
        }
        if (infs.empty()) {
            for (auto &P : X.places_of_degree(2)) {
                if (P.inf) D.add(P, -N.degree() / 2);
            }
        } else {
            const int o1 = detail::order_at_even_infinity(X, infs[0].rep.y, a, b);
            D.add(infs[0], o1);
            D.add(infs[1], -N.degree() - o1);
        }
    }
    return D;
}

inline Divisor divisor_of_function(const Curve &X, const Function &g)
{
    if (g.is_zero()) throw Error(ErrorKind::ZeroFunction, "divisor of the zero function");
    const Poly one = Poly::constant(&X.field(), 1);
    return divisor_of_numerator(X, g.a, g.b) - divisor_of_numerator(X, g.den, Poly(&X.field()));
}

/// Basis of L(D) = {g : div(g) + D >= 0} (zero excluded), deterministic order.
inline std::vector<Function> riemann_roch_space(const Curve &X, const Divisor &D)
{
    const Field *F = &X.field();
    const Poly one = Poly::constant(F, 1);
    const long degD = D.degree();
    std::vector<Function> out;
    if (X.is_p1()) {
        if (degD < 0) return out;
        Poly gp = one, gm = one;
        for (auto &[P, n] : D.terms()) {
            if (P.inf) continue;
            if (n > 0) gp *= pow(P.u, static_cast<std::uint64_t>(n));
            else gm *= pow(P.u, static_cast<std::uint64_t>(-n));
        }
        for (long i = 0; i <= degD; ++i) out.push_back(make_function(X, gm * Poly::monomial(F, 1, static_cast<std::size_t>(i)), Poly(F), gp));
        return out;
    }
    const int g = X.genus();
    bool finite_support = false;
    for (auto &[P, n] : D.terms()) finite_support = finite_support || !P.inf;
    if (!X.odd_model() || (X.kind() == CurveKind::Hyperelliptic && finite_support)) {
        if (finite_support) throw Error(ErrorKind::UnsupportedDivisor, "hyperelliptic Riemann-Roch supports divisors at infinity only");
        // Even-degree model: a (inf+ + inf-) or a * inf_2.
        long a = 0;
        if (!D.is_zero()) {
            const auto &terms = D.terms();
            const int n0 = terms.begin()->second;
            for (auto &[P, n] : terms) {
                if (n != n0) throw Error(ErrorKind::UnsupportedDivisor, "divisor at infinity must be symmetric");
            }
            if (terms.size() == 1 && terms.begin()->first.degree == 1) throw Error(ErrorKind::UnsupportedDivisor, "divisor at infinity must be symmetric");
            a = n0;
        }
        for (long i = 0; i <= a; ++i) out.push_back(make_function(X, Poly::monomial(F, 1, static_cast<std::size_t>(i))));
        for (long i = 0; i + g + 1 <= a; ++i) out.push_back(make_function(X, Poly(F), Poly::monomial(F, 1, static_cast<std::size_t>(i))));
        return out;
    }
    // Odd-degree model. Clear the finite positive part with h(x), then cut
    // L(M inf) down by local conditions.
    if (degD < 0) return out;
    Poly hclear = one;
    int m_inf = 0;
    std::vector<Poly> factors;
    for (auto &[P, n] : D.terms()) {
        if (P.inf) {
            m_inf = n;
            continue;
        }
        if (std::find(factors.begin(), factors.end(), P.u) == factors.end()) factors.push_back(P.u);
        if (n > 0) hclear *= pow(P.u, static_cast<std::uint64_t>(n));
    }
    const long M = m_inf + 2L * hclear.degree();
    if (M < 0) return out;
    struct Mono {
        Poly a, b;
    };
    std::vector<Mono> basis;
    for (long i = 0; 2 * i <= M; ++i) basis.push_back({Poly::monomial(F, 1, static_cast<std::size_t>(i)), Poly(F)});
    for (long i = 0; 2 * i + 2 * g + 1 <= M; ++i) basis.push_back({Poly(F), Poly::monomial(F, 1, static_cast<std::size_t>(i))});
    const std::size_t nb = basis.size();
    Matrix conditions;
    for (auto &pi : factors) {
        for (auto &Q : detail::places_over(X, pi)) {
            const int need = detail::ramification(X, Q) * detail::multiplicity_in(hclear, pi) - D.multiplicity(Q);
            if (need <= 0) continue;
            auto K = X.over(static_cast<unsigned>(Q.degree));
            auto L = local_expansion(X, *K, Q.rep, static_cast<std::size_t>(need));
            std::vector<Series> cols;
            for (auto &mono : basis) cols.push_back(expand(L, mono.a, mono.b));
            // sum_j c_j s_j = 0 in K with c_j in F_q  <=>  Tr(beta sum_j c_j s_j) = 0 for beta in a basis of K.
            std::vector<elem> betas;
            elem beta = 1;
            for (int i = 0; i < Q.degree; ++i) {
                betas.push_back(beta);
                beta = K->mul(beta, K->generator());
            }
            for (int k = 0; k < need; ++k) {
                for (elem bt : betas) {
                    std::vector<elem> row(nb, 0);
                    for (std::size_t j = 0; j < nb; ++j) {
                        elem z = K->mul(bt, cols[j][static_cast<std::size_t>(k)]);
                        elem tr = 0;
                        for (int i = 0; i < Q.degree; ++i) {
                            tr = K->add(tr, z);
                            z = K->pow(z, X.q());
                        }
                        auto d = descend(tr, *F, *K);
                        check(d.has_value(), "trace not in base field");
                        row[j] = *d;
                    }
                    conditions.push_back(std::move(row));
                }
            }
        }
    }
    Matrix sol = conditions.empty() ? Matrix() : nullspace(*F, conditions, nb);
    if (conditions.empty()) {
        for (std::size_t j = 0; j < nb; ++j) {
            std::vector<elem> e(nb, 0);
            e[j] = 1;
            sol.push_back(std::move(e));
        }
    }
    for (auto &c : sol) {
        Poly a(F), b(F);
        for (std::size_t j = 0; j < nb; ++j) {
            if (!c[j]) continue;
            a += basis[j].a.scale(c[j]);
            b += basis[j].b.scale(c[j]);
        }
        out.push_back(normalize(Function{a, b, hclear}));
    }
    return out;
}

/// dim L(D).
inline std::size_t riemann_roch_dimension(const Curve &X, const Divisor &D) { return riemann_roch_space(X, D).size(); }

} // namespace tracelab
