#pragma once

// Hecke operators for G_m: translation of divisor classes by m*D, D in X_d.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "lseries.hpp"

namespace tracelab {

struct EigenvalueRow {
    std::string curve;
    int chi_id = 0;
    std::string chi_label;
    int m = 0;
    unsigned d = 0;
    RingElem lhs, rhs;
    bool equal = false;
};

/// Character sum over X_d of chi(mD) against the t^d coefficient of L(chi^m, t).
inline EigenvalueRow eigenvalue_check(const PicardGroup &G, const TorusCharacter &chi, int m, unsigned d)
{
    EigenvalueRow r;
    r.curve = G.curve().descriptor();
    r.chi_id = chi.id;
    r.chi_label = chi.label;
    r.m = m;
    r.d = d;
    std::vector<std::int64_t> hist(static_cast<std::size_t>(chi.order), 0);
    for_each_effective_divisor(G.curve(), d, [&](const Divisor &D) {
        const long v = static_cast<long>(chi.value(G, D)) * m;
        ++hist[static_cast<std::size_t>(((v % chi.order) + chi.order) % chi.order)];
    });
    for (int a = 0; a < chi.order; ++a) {
        if (hist[static_cast<std::size_t>(a)]) r.lhs += unit(chi.order, a, 0) * RingElem(hist[static_cast<std::size_t>(a)]);
    }
    r.rhs = euler_product(G, chi.power(m), 0, d)[d];
    r.equal = r.lhs == r.rhs;
    return r;
}

struct VanishingScan {
    std::vector<unsigned> nonzero;
    int bound = 0;        // 2g - 2
    bool applies = false; // chi^m geometrically nontrivial
    bool holds = true;    // no nonzero eigenvalue above the bound
};

inline VanishingScan vanishing_scan(const PicardGroup &G, const TorusCharacter &chi, int m, unsigned d_min, unsigned d_max)
{
    VanishingScan s;
    s.bound = 2 * G.curve().genus() - 2;
    s.applies = !chi.power(m).geometrically_trivial();
    for (unsigned d = d_min; d <= d_max; ++d) {
        if (!eigenvalue_check(G, chi, m, d).lhs.is_zero()) s.nonzero.push_back(d);
    }
    if (s.applies) {
        for (auto d : s.nonzero) s.holds = s.holds && static_cast<int>(d) <= s.bound;
    }
    return s;
}

struct Gl1Trace {
    RingElem value;
    std::int64_t expected = 0; // q - 1
    std::int64_t characters = 0;
    std::int64_t p_at_one = 0;
    bool equal = false;
};

/// q^{-(g-1)} * q^{g-1}(q-1)/P(1) * #characters, with the character count from
/// the enumerated Jacobian and P(1) from point counts.
inline Gl1Trace gl1_relative_trace(const PicardGroup &G)
{
    const auto z = zeta_data(G.curve());
    Gl1Trace t;
    t.characters = static_cast<std::int64_t>(characters(G, 1).size());
    t.p_at_one = z.at_one();
    t.expected = z.q - 1;
    const int g = G.curve().genus();
    std::int64_t qg = 1;
    for (int i = 0; i < g - 1; ++i) qg = detail::checked_mul(qg, z.q);
    // numerator q^{g-1}(q-1) #chars, denominator q^{g-1} P(1) (q^{g-1} = 1/q at genus 0)
    std::int64_t num = detail::checked_mul(z.q - 1, t.characters), den = t.p_at_one;
    if (g >= 1) {
        num = detail::checked_mul(num, qg);
        den = detail::checked_mul(den, qg);
    }
    const std::int64_t c = std::gcd(num, den);
    num /= c;
    den /= c;
    if (den != 1) throw Error(ErrorKind::Internal, "relative trace is not an integer: " + std::to_string(num) + "/" + std::to_string(den));
    t.value = RingElem(num);
    t.equal = num == t.expected;
    return t;
}

struct HeckeKernelTable {
    unsigned d = 0;
    std::vector<int> weights;
    /// (class index in Pic^0, degree shift) -> multiplicity
    std::map<std::pair<int, long>, std::int64_t> translations;
    std::int64_t mass = 0;
    bool translation_invariant = false;
    std::int64_t diagonal_trace = 0;

    /// Eigenvalue of the kernel on a character.
    RingElem action(const TorusCharacter &chi, const PicardGroup &G) const
    {
        std::vector<std::int64_t> hist(static_cast<std::size_t>(chi.order), 0);
        for (auto &[key, n] : translations) hist[static_cast<std::size_t>(chi.value(G, key.first, key.second))] += n;
        RingElem s;
        for (int a = 0; a < chi.order; ++a) {
            if (hist[static_cast<std::size_t>(a)]) s += unit(chi.order, a, 0) * RingElem(hist[static_cast<std::size_t>(a)]);
        }
        return s;
    }
};

/// Translations by sum_j m_j D_j with sum_j deg D_j = d, one D_j per weight.
inline HeckeKernelTable build_kernel(const PicardGroup &G, unsigned d, const std::vector<int> &weights)
{
    check(!weights.empty(), "kernel needs at least one weight");
    using Hist = std::map<std::pair<int, long>, std::int64_t>;
    // per degree e <= d: histogram of (class, degree) of D in X_e
    std::vector<Hist> by_degree(d + 1);
    for (unsigned e = 0; e <= d; ++e) {
        for_each_effective_divisor(G.curve(), e, [&](const Divisor &D) { ++by_degree[e][{G.class_of(D), static_cast<long>(e)}]; });
    }
    auto scaled = [&](const Hist &h, int m) {
        Hist out;
        for (auto &[key, n] : h) {
            const auto &J = G.jacobian();
            const int c = G.index_of(J.mul(G.elements()[static_cast<std::size_t>(key.first)], m));
            out[{c, key.second * m}] += n;
        }
        return out;
    };
    // acc[e] = translations using total divisor degree e so far
    std::vector<Hist> acc(d + 1);
    acc[0][{0, 0}] = 1;
    for (int m : weights) {
        std::vector<Hist> next(d + 1);
        std::vector<Hist> sc(d + 1);
        for (unsigned e = 0; e <= d; ++e) sc[e] = scaled(by_degree[e], m);
        for (unsigned a = 0; a <= d; ++a) {
            for (auto &[k1, n1] : acc[a]) {
                for (unsigned b = 0; a + b <= d; ++b) {
                    for (auto &[k2, n2] : sc[b]) next[a + b][{G.add(k1.first, k2.first), k1.second + k2.second}] += n1 * n2;
                }
            }
        }
        acc = std::move(next);
    }
    HeckeKernelTable T;
    T.d = d;
    T.weights = weights;
    T.translations = acc[d];
    for (auto &[key, n] : T.translations) T.mass += n;
    // explicit rows over Pic^0: K(x, y) = #translations t with x + t = y
    const int n = static_cast<int>(G.size());
    bool invariant = true;
    std::map<std::pair<int, long>, std::int64_t> row0;
    for (int x = 0; x < n && invariant; ++x) {
        std::map<std::pair<int, long>, std::int64_t> row;
        std::int64_t sum = 0;
        for (auto &[key, c] : T.translations) {
            row[{G.add(x, key.first), key.second}] += c;
            sum += c;
        }
        // translating the row back by -x must give row 0
        std::map<std::pair<int, long>, std::int64_t> back;
        for (auto &[key, c] : row) back[{G.add(key.first, G.neg(x)), key.second}] += c;
        if (x == 0) row0 = back;
        invariant = sum == T.mass && back == row0;
        for (auto &[key, c] : row) {
            if (key.first == x && key.second == 0) T.diagonal_trace += c;
        }
    }
    T.translation_invariant = invariant;
    return T;
}

} // namespace tracelab
