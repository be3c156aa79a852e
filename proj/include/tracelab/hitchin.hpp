#pragma once

// The SL2 Hitchin-like base: pairs (D, b) with D effective of degree d and
// b in L(D), the spectral curve t^2 - b t + 1 = 0, its discriminant divisor
// div(b^2 - 4) + 2D, the delta invariant, component-group classes, stratum
// counts over a tower of fields, and the fibre-product counts around it.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "function.hpp"
#include "picard.hpp"
#include "zeta.hpp"

namespace tracelab {

struct HitchinBasePoint {
    CurvePtr curve;
    Divisor D;
    std::vector<elem> coords; // in the Riemann-Roch basis of L(D)
    Function b;
};

enum class Pi0Class { Zero, TwoTorsion, FullZ };

inline const char *pi0_name(Pi0Class c)
{
    switch (c) {
    case Pi0Class::Zero: return "Zero";
    case Pi0Class::TwoTorsion: return "TwoTorsion";
    case Pi0Class::FullZ: return "FullZ";
    }
    return "";
}

struct DiscriminantReport {
    Divisor discr, D1, D2;
    int delta = 0;
    Pi0Class pi0 = Pi0Class::Zero;
    bool split = false; // b^2 - 4 is a square over the base field itself
};

namespace detail {

inline void require_odd_characteristic(const Curve &X)
{
    if (X.field().p() == 2) throw Error(ErrorKind::EvenCharacteristic, "b^2 - 4 is always a square in characteristic 2");
}

inline bool is_constant_function(const Function &g, elem c)
{
    return g.b.is_zero() && g.den.is_one() && g.a.degree() <= 0 && g.a[0] == c;
}

inline Function b_squared_minus_four(const Curve &X, const Function &b)
{
    const elem four = X.field().from_int(4);
    return sub(X, mul(X, b, b), constant_function(X, four));
}

// Calls fn(s) on every nonzero combination of the basis.
inline void for_each_combination(const Curve &X, const std::vector<Function> &basis, const std::function<void(const std::vector<elem> &, const Function &)> &fn)
{
    const std::uint32_t q = X.q();
    std::vector<elem> c(basis.size(), 0);
    while (true) {
        Function s = make_function(X, Poly(&X.field()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (c[i]) s = add(X, s, scale(basis[i], c[i]));
        }
        fn(c, s);
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == q) c[i++] = 0;
        if (i == c.size()) return;
    }
}

inline elem least_nonsquare(const Field &F)
{
    for (elem a = 1; a < F.q(); ++a) {
        if (!F.is_square(a)) return a;
    }
    throw Error(ErrorKind::Internal, "no nonsquare");
}

} // namespace detail

/// sum over D in X_d of q^{dim L(D)}.
inline std::int64_t hitchin_base_size(const Curve &X, unsigned d)
{
    detail::require_odd_characteristic(X);
    std::int64_t q = X.q(), n = 0;
    if (X.is_p1()) {
        std::int64_t qd = 1;
        for (unsigned i = 0; i <= d; ++i) qd = detail::checked_mul(qd, q);
        return detail::checked_mul(static_cast<std::int64_t>(effective_divisor_count(X, d)), qd);
    }
    require_within_cap(effective_divisor_count(X, d), "divisors of degree " + std::to_string(d));
    for_each_effective_divisor(X, d, [&](const Divisor &D) {
        std::int64_t qd = 1;
        for (std::size_t i = 0; i < riemann_roch_dimension(X, D); ++i) qd = detail::checked_mul(qd, q);
        n = detail::checked_add(n, qd);
    });
    return n;
}

inline void hitchin_base_enumerate(const CurvePtr &X, unsigned d, const std::function<void(const HitchinBasePoint &)> &fn)
{
    detail::require_odd_characteristic(*X);
    require_within_cap(static_cast<std::uint64_t>(hitchin_base_size(*X, d)), "Hitchin base of degree " + std::to_string(d));
    for_each_effective_divisor(*X, d, [&](const Divisor &D) {
        const auto basis = riemann_roch_space(*X, D);
        detail::for_each_combination(*X, basis, [&](const std::vector<elem> &c, const Function &b) { fn(HitchinBasePoint{X, D, c, b}); });
    });
}

/// True when b = +-2, where the spectral curve is non-reduced.
inline bool non_reduced(const HitchinBasePoint &pt)
{
    const Field &F = pt.curve->field();
    return detail::is_constant_function(pt.b, F.from_int(2)) || detail::is_constant_function(pt.b, F.from_int(-2));
}

namespace detail {

// Square test for g on an elliptic (or general) base: s in L(D) with s^2 = c g.
inline std::pair<Pi0Class, bool> square_class(const Curve &X, const Divisor &D, const Function &g)
{
    const elem ns = least_nonsquare(X.field());
    bool split = false, twisted = false;
    const auto basis = riemann_roch_space(X, D);
    const Function gn = scale(g, ns);
    for_each_combination(X, basis, [&](const std::vector<elem> &, const Function &s) {
        if (s.is_zero() || split) return;
        const Function s2 = mul(X, s, s);
        if (s2 == g) split = true;
        else if (s2 == gn) twisted = true;
    });
    if (split || twisted) return {Pi0Class::FullZ, split};
    return {Pi0Class::TwoTorsion, false};
}

} // namespace detail

/// With classify = false the component class is left at Zero.
inline DiscriminantReport discriminant(const HitchinBasePoint &pt, bool classify = true)
{
    const Curve &X = *pt.curve;
    detail::require_odd_characteristic(X);
    if (non_reduced(pt)) throw Error(ErrorKind::NonReducedSpectralCurve, "b^2 - 4 vanishes identically");
    const Function g = detail::b_squared_minus_four(X, pt.b);
    DiscriminantReport r;
    r.discr = divisor_of_function(X, g);
    for (auto &[P, n] : pt.D.terms()) r.discr.add(P, 2 * n);
    check(r.discr.is_effective(), "discriminant is not effective");
    check(r.discr.degree() == 2 * pt.D.degree(), "discriminant has the wrong degree");
    bool all_even = true;
    for (auto &[P, n] : r.discr.terms()) {
        if (n % 2) r.D1.add(P, 1);
        if (n / 2) r.D2.add(P, n / 2);
        all_even = all_even && n % 2 == 0;
    }
    r.delta = static_cast<int>(r.D2.degree());
    if (!all_even || !classify) return r;
    if (X.is_p1()) {
        // g = c * s^2 with s monic: split exactly when c is a square
        const elem c = X.field().div(g.a.lc(), g.den.lc());
        r.pi0 = Pi0Class::FullZ;
        r.split = X.field().is_square(c);
        return r;
    }
    std::tie(r.pi0, r.split) = detail::square_class(X, pt.D, g);
    return r;
}

inline int delta_invariant(const HitchinBasePoint &pt) { return discriminant(pt).delta; }

/// delta on P^1 from the squarefree decomposition of a^2 - 4 den^2 (b = a/den)
/// plus the contribution at infinity; independent of the divisor route.
inline int delta_by_squarefree(const HitchinBasePoint &pt)
{
    const Curve &X = *pt.curve;
    check(X.is_p1(), "squarefree delta is implemented over P^1");
    if (non_reduced(pt)) throw Error(ErrorKind::NonReducedSpectralCurve, "b^2 - 4 vanishes identically");
    const Field &F = X.field();
    const Poly &a = pt.b.a, &den = pt.b.den;
    const Poly N = a * a - den * den * Poly::constant(&F, F.from_int(4));
    long delta = 0;
    for (auto &[gi, i] : squarefree_decompose(N)) delta += static_cast<long>(i / 2) * gi.degree();
    long d_fin = 0, d_inf = 0;
    for (auto &[P, n] : pt.D.terms()) (P.inf ? d_inf : d_fin) += static_cast<long>(n) * P.degree;
    delta += d_fin - den.degree();
    const long n_inf = 2 * den.degree() - N.degree() + 2 * d_inf;
    delta += n_inf / 2;
    return static_cast<int>(delta);
}

inline std::pair<Pi0Class, bool> pi0_classify(const HitchinBasePoint &pt)
{
    const auto r = discriminant(pt);
    if (pt.curve->is_p1()) check(r.pi0 != Pi0Class::TwoTorsion, "two-torsion class over P^1");
    return {r.pi0, r.split};
}

/// Histogram delta -> count over the reduced locus, with the non-reduced count.
struct DeltaHistogram {
    std::map<int, std::int64_t> counts;
    std::int64_t nonreduced = 0;
};

namespace detail {

// With U = F - 2G, W = F + 2G (b = F/G for sections F, G of O(D), div G = D)
// the discriminant is div(U) + div(W). Within one degree-d class, each ordered
// pair of effective divisors carries (q - 1) - [U = W] base points.
inline DeltaHistogram pair_delta_histogram(const CurvePtr &X, unsigned d)
{
    struct Entry {
        int id, mult, degree;
    };
    std::map<Place, int> ids;
    std::map<int, std::vector<std::vector<Entry>>> by_class;
    PicardPtr G = X->is_p1() ? nullptr : picard_group(X);
    std::int64_t n = 0;
    for_each_effective_divisor(*X, d, [&](const Divisor &D) {
        std::vector<Entry> e;
        for (auto &[P, m] : D.terms()) {
            auto it = ids.emplace(P, static_cast<int>(ids.size())).first;
            e.push_back({it->second, m, P.degree});
        }
        std::sort(e.begin(), e.end(), [](const Entry &x, const Entry &y) { return x.id < y.id; });
        by_class[G ? G->class_of(D) : 0].push_back(std::move(e));
        ++n;
    });
    const std::int64_t q = X->q();
    DeltaHistogram h;
    h.nonreduced = 2 * n;
    for (auto &[cls, divs] : by_class) {
        require_within_cap(static_cast<std::uint64_t>(divs.size() * divs.size()), "pairs of degree-" + std::to_string(d) + " divisors");
        for (std::size_t i = 0; i < divs.size(); ++i) {
            for (std::size_t j = 0; j < divs.size(); ++j) {
                const auto &A = divs[i], &B = divs[j];
                long delta = 0;
                std::size_t s = 0, t = 0;
                while (s < A.size() || t < B.size()) {
                    if (t == B.size() || (s < A.size() && A[s].id < B[t].id)) {
                        delta += (A[s].mult / 2) * A[s].degree;
                        ++s;
                    } else if (s == A.size() || B[t].id < A[s].id) {
                        delta += (B[t].mult / 2) * B[t].degree;
                        ++t;
                    } else {
                        delta += ((A[s].mult + B[t].mult) / 2) * A[s].degree;
                        ++s;
                        ++t;
                    }
                }
                h.counts[static_cast<int>(delta)] += (q - 1) - (i == j ? 1 : 0);
            }
        }
    }
    return h;
}

} // namespace detail

/// delta histogram by enumerating every (D, b).
inline DeltaHistogram delta_histogram_enumerated(const CurvePtr &X, unsigned d)
{
    DeltaHistogram h;
    hitchin_base_enumerate(X, d, [&](const HitchinBasePoint &pt) {
        if (non_reduced(pt)) {
            ++h.nonreduced;
            return;
        }
        ++h.counts[discriminant(pt, false).delta];
    });
    return h;
}

inline DeltaHistogram delta_histogram(const CurvePtr &X, unsigned d)
{
    detail::require_odd_characteristic(*X);
    return detail::pair_delta_histogram(X, d);
}

struct StratumRow {
    std::uint64_t q = 0;
    int d = 0;
    int delta = 0;
    std::int64_t count = 0;
    std::optional<double> est_dim; // from the previous field in the tower
    int expected_dim = 0;
    bool checked = false; // delta within the asserted range
    bool ok = true;       // set on the top field of the tower
};

struct Stratification {
    std::string curve;
    int d = 0;
    std::vector<std::uint64_t> fields;
    std::vector<std::int64_t> base_size, nonreduced;
    std::vector<StratumRow> rows;
    bool partition_ok = true;
    bool pass = true;
};

/// delta strata of the degree-d base over F_q, F_{q^2}, ..., F_{q^tower}.
inline Stratification stratify(const CurvePtr &X, unsigned d, unsigned tower)
{
    detail::require_odd_characteristic(*X);
    check(tower >= 1, "tower needs at least one field");
    Stratification S;
    S.curve = X->descriptor();
    S.d = static_cast<int>(d);
    const int g = X->genus();
    const int top = std::min(static_cast<int>(d), static_cast<int>(d) - 2 * g + 1);
    std::vector<std::map<int, std::int64_t>> levels;
    for (unsigned n = 1; n <= tower; ++n) {
        CurvePtr Xn = n == 1 ? X : X->base_change(n);
        const auto h = delta_histogram(Xn, d);
        const std::int64_t size = hitchin_base_size(*Xn, d);
        std::int64_t total = h.nonreduced;
        for (auto &[delta, c] : h.counts) total += c;
        S.partition_ok = S.partition_ok && total == size;
        S.fields.push_back(Xn->q());
        S.base_size.push_back(size);
        S.nonreduced.push_back(h.nonreduced);
        levels.push_back(h.counts);
    }
    int max_delta = 0;
    for (auto &lv : levels) {
        for (auto &[delta, c] : lv) max_delta = std::max(max_delta, delta);
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (int delta = 0; delta <= max_delta; ++delta) {
            StratumRow row;
            row.q = S.fields[i];
            row.d = S.d;
            row.delta = delta;
            auto it = levels[i].find(delta);
            row.count = it == levels[i].end() ? 0 : it->second;
            row.expected_dim = 2 * S.d - g + 1 - delta;
            row.checked = delta <= top;
            if (i > 0) {
                auto prev = levels[i - 1].find(delta);
                const std::int64_t c0 = prev == levels[i - 1].end() ? 0 : prev->second;
                if (c0 > 0 && row.count > 0) {
                    row.est_dim = std::log(static_cast<double>(row.count) / static_cast<double>(c0)) / std::log(static_cast<double>(S.fields[i]) / static_cast<double>(S.fields[i - 1]));
                }
                // asserted on the two largest fields, where lower-order terms matter least
                if (row.checked && i + 1 == levels.size()) row.ok = row.est_dim && std::abs(*row.est_dim - row.expected_dim) <= 0.5;
            }
            S.pass = S.pass && row.ok;
            S.rows.push_back(row);
        }
    }
    S.pass = S.pass && S.partition_ok && tower >= 2;
    return S;
}

/// #{(D, D') in X_d x X_d : D ~ D'} over F_{q^n}.
inline std::int64_t martens_fiber_count(const CurvePtr &X, unsigned d, unsigned n = 1)
{
    CurvePtr Xn = n == 1 ? X : X->base_change(n);
    const std::int64_t nd = static_cast<std::int64_t>(effective_divisor_count(*Xn, d));
    if (Xn->is_p1()) return detail::checked_mul(nd, nd);
    require_within_cap(static_cast<std::uint64_t>(nd), "divisors of degree " + std::to_string(d));
    auto G = picard_group(Xn);
    std::map<int, std::int64_t> per_class;
    for_each_effective_divisor(*Xn, d, [&](const Divisor &D) { ++per_class[G->class_of(D)]; });
    std::int64_t s = 0;
    for (auto &[c, k] : per_class) s = detail::checked_add(s, detail::checked_mul(k, k));
    return s;
}

struct MartensGrowth {
    std::int64_t c1 = 0, c2 = 0;
    double exponent = 0;
    int expected = 0;
    bool ok = false;
};

/// log_q(c(F_{q^2}) / c(F_q)) against d (d <= g - 1) or 2d - g (d >= g).
inline MartensGrowth martens_growth(const CurvePtr &X, unsigned d)
{
    MartensGrowth m;
    m.c1 = martens_fiber_count(X, d, 1);
    m.c2 = martens_fiber_count(X, d, 2);
    const int g = X->genus(), di = static_cast<int>(d);
    m.expected = di <= g - 1 ? di : 2 * di - g;
    m.exponent = std::log(static_cast<double>(m.c2) / static_cast<double>(m.c1)) / std::log(static_cast<double>(X->q()));
    m.ok = std::abs(m.exponent - m.expected) <= 0.5;
    return m;
}

struct TorsorCheck {
    std::int64_t base_size = 0, zero_section = 0;
    std::int64_t lhs = 0; // base points with b != 0
    std::int64_t rhs = 0; // (q - 1) * martens count
    bool equal = false;
};

inline TorsorCheck gm_torsor_check(const CurvePtr &X, unsigned d)
{
    TorsorCheck t;
    t.base_size = hitchin_base_size(*X, d);
    t.zero_section = static_cast<std::int64_t>(effective_divisor_count(*X, d));
    t.lhs = t.base_size - t.zero_section;
    t.rhs = detail::checked_mul(static_cast<std::int64_t>(X->q()) - 1, martens_fiber_count(X, d, 1));
    t.equal = t.lhs == t.rhs;
    return t;
}

struct FiberCount {
    int genus = 0;
    std::int64_t symmetry = 0; // #P_{D,b} = P_Y(1)
    std::int64_t fiber = 0;    // norm-one classes on Y, enumerated
    bool enumerated = false;   // fiber came from Picard enumeration
    bool equal = false;
};

/// Smooth spectral curves over P^1: Y is w^2 = a^2 - 4 den^2.
inline FiberCount hitchin_fiber_count(const HitchinBasePoint &pt)
{
    const Curve &X = *pt.curve;
    if (!X.is_p1()) throw Error(ErrorKind::UnsupportedCurve, "fibre counts are implemented over P^1");
    const auto r = discriminant(pt);
    if (r.delta > 0) throw Error(ErrorKind::SingularSpectralCurve, "spectral curve is singular (delta = " + std::to_string(r.delta) + ")");
    if (pt.D.degree() == 0) throw Error(ErrorKind::UnsupportedDivisor, "fibre counts need deg D >= 1");
    // a reducible spectral curve forces even multiplicities, impossible here
    check(r.pi0 == Pi0Class::Zero, "reducible spectral curve with multiplicity-free discriminant");
    const Field &F = X.field();
    const Poly N = pt.b.a * pt.b.a - pt.b.den * pt.b.den * Poly::constant(&F, F.from_int(4));
    FiberCount out;
    out.genus = (N.degree() + 1) / 2 - 1;
    if (out.genus <= 0) {
        out.symmetry = out.fiber = 1;
        out.enumerated = true;
        out.equal = true;
        return out;
    }
    if (out.genus > 2) throw Error(ErrorKind::UnsupportedCurve, "spectral curve of genus above 2");
    auto Y = make_hyperelliptic(X.field_ptr(), N);
    out.symmetry = zeta_data(*Y).at_one();
    // an odd model for the Picard enumeration: move a rational root to infinity
    Poly odd = N;
    if (N.degree() % 2 == 0) {
        auto roots = roots_in(N, F);
        if (roots.empty()) {
            out.fiber = out.symmetry;
            out.equal = true;
            return out;
        }
        // x = r + 1/X: X^deg N(r + 1/X) has degree deg N - 1
        const elem r0 = roots.front();
        const std::size_t n = static_cast<std::size_t>(N.degree());
        Poly acc(&F);
        for (std::size_t i = 0; i <= n; ++i) {
            // N_i (r X + 1)^i X^{n - i}
            const Poly term = pow(Poly(&F, {1, r0}), i) * Poly::monomial(&F, 1, n - i);
            acc = acc + term.scale(N[i]);
        }
        odd = acc;
    }
    auto G = picard_group(make_hyperelliptic(X.field_ptr(), odd));
    out.fiber = static_cast<std::int64_t>(G->size());
    out.enumerated = true;
    out.equal = out.fiber == out.symmetry;
    return out;
}

} // namespace tracelab
