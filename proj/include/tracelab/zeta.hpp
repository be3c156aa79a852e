#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curve.hpp"
#include "ring.hpp"

namespace tracelab {

struct ZetaData {
    int genus = 0;
    std::int64_t q = 0;
    std::vector<std::int64_t> counts;  // N_1, N_2, ...
    std::vector<std::int64_t> numerator; // P(t), low degree first, length 2g+1

    std::int64_t at_one() const
    {
        std::int64_t s = 0;
        for (auto c : numerator) s += c;
        return s;
    }

    /// t^d coefficient of Z(t) = P(t)/((1-t)(1-qt)).
    std::int64_t zeta_coefficient(unsigned d) const
    {
        // 1/((1-t)(1-qt)) has coefficients (q^{n+1}-1)/(q-1)
        std::int64_t total = 0;
        for (std::size_t k = 0; k < numerator.size() && k <= d; ++k) {
            std::int64_t geo = 0, qp = 1;
            for (unsigned i = 0; i <= d - k; ++i) {
                geo = detail::checked_add(geo, qp);
                if (i < d - k) qp = detail::checked_mul(qp, q);
            }
            total = detail::checked_add(total, detail::checked_mul(numerator[k], geo));
        }
        return total;
    }

    std::string numerator_str() const
    {
        std::string out;
        for (std::size_t k = 0; k < numerator.size(); ++k) {
            const auto c = numerator[k];
            if (!c) continue;
            std::string term;
            const std::string mono = k == 0 ? "" : k == 1 ? "t" : "t^" + std::to_string(k);
            if (mono.empty()) term = std::to_string(c);
            else if (c == 1) term = mono;
            else if (c == -1) term = "-" + mono;
            else term = std::to_string(c) + "*" + mono;
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        return out.empty() ? "0" : out;
    }
};

/// Numerator of the zeta function from N_1..N_m (m >= max(1, 2g)).
inline ZetaData zeta_from_counts(const std::vector<std::int64_t> &counts, std::int64_t q, int g)
{
    const std::size_t need = static_cast<std::size_t>(std::max(1, 2 * g));
    if (g < 0 || q < 2) throw Error(ErrorKind::InconsistentCounts, "bad genus or field size");
    if (counts.size() < need) throw Error(ErrorKind::InconsistentCounts, "need at least " + std::to_string(need) + " point counts");
    const std::size_t n = counts.size();
    // power sums of the inverse roots: s_k = q^k + 1 - N_k
    std::vector<std::int64_t> s(n + 1, 0);
    std::int64_t qk = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        qk = detail::checked_mul(qk, q);
        s[k] = qk + 1 - counts[k - 1];
    }
    // Newton: k c_k = -sum_{i=1}^k s_i c_{k-i}
    std::vector<std::int64_t> c(static_cast<std::size_t>(2 * g) + 1, 0);
    c[0] = 1;
    for (std::size_t k = 1; k < c.size(); ++k) {
        std::int64_t acc = 0;
        for (std::size_t i = 1; i <= k; ++i) acc = detail::checked_add(acc, detail::checked_mul(s[i], c[k - i]));
        if (acc % static_cast<std::int64_t>(k) != 0) throw Error(ErrorKind::InconsistentCounts, "Newton recursion is not integral at degree " + std::to_string(k));
        c[k] = -acc / static_cast<std::int64_t>(k);
    }
    // functional equation c_{2g-k} = q^{g-k} c_k
    for (int k = 0; k <= g; ++k) {
        std::int64_t qp = 1;
        for (int i = 0; i < g - k; ++i) qp = detail::checked_mul(qp, q);
        if (c[static_cast<std::size_t>(2 * g - k)] != detail::checked_mul(qp, c[static_cast<std::size_t>(k)])) {
            throw Error(ErrorKind::InconsistentCounts, "functional equation fails at degree " + std::to_string(2 * g - k));
        }
    }
    // any further counts must be reproduced by the degree-2g numerator
    for (std::size_t k = c.size(); k <= n; ++k) {
        std::int64_t acc = 0; // sum_{i=1}^{k-1} s_i c_{k-i} + s_k = 0 with c_j = 0 beyond 2g
        for (std::size_t i = 1; i <= k; ++i) {
            const std::size_t j = k - i;
            if (j < c.size()) acc = detail::checked_add(acc, detail::checked_mul(s[i], c[j]));
        }
        if (acc != 0) throw Error(ErrorKind::InconsistentCounts, "count N_" + std::to_string(k) + " is not reproduced by P(t)");
    }
    ZetaData z{g, q, counts, c};
    if (z.at_one() <= 0) throw Error(ErrorKind::InconsistentCounts, "P(1) must be positive");
    return z;
}

/// Zeta data from the curve's own point counts.
inline ZetaData zeta_data(const Curve &X)
{
    const int g = X.genus();
    const unsigned m = static_cast<unsigned>(std::max(1, 2 * g));
    std::vector<std::int64_t> counts;
    for (unsigned n = 1; n <= m; ++n) counts.push_back(static_cast<std::int64_t>(X.point_count(n)));
    return zeta_from_counts(counts, X.q(), g);
}

/// N_n = q^n + 1 - s_n with s_n the n-th power sum of the inverse roots of P.
inline std::int64_t predicted_point_count(const ZetaData &z, unsigned n)
{
    std::vector<std::int64_t> s(n + 1, 0);
    auto c = [&](std::size_t k) { return k < z.numerator.size() ? z.numerator[k] : 0; };
    for (std::size_t k = 1; k <= n; ++k) {
        std::int64_t acc = detail::checked_mul(static_cast<std::int64_t>(k), c(k));
        for (std::size_t i = 1; i < k; ++i) acc = detail::checked_add(acc, detail::checked_mul(s[i], c(k - i)));
        s[k] = -acc;
    }
    std::int64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn = detail::checked_mul(qn, z.q);
    return qn + 1 - s[n];
}

/// #X_d(F_q) as the t^d coefficient of Z(X, t).
inline std::int64_t sym_power_point_count(const Curve &X, unsigned d) { return zeta_data(X).zeta_coefficient(d); }

} // namespace tracelab
