#pragma once

// Exact coefficients: Laurent polynomials in a half-twist unit v over the
// cyclotomic integers Z[z_N], z_N a primitive N-th root of unity.
//
// Elements are stored in the power basis z^a, 0 <= a < phi(N), so equality is
// structural and character sums that vanish in C vanish here too.

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"

namespace tracelab {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Internal, "integer overflow in coefficient ring");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Internal, "integer overflow in coefficient ring");
    return r;
}

// Integer coefficients of the N-th cyclotomic polynomial, low degree first.
inline const std::vector<std::int64_t> &cyclotomic(int N)
{
    static std::mutex mu;
    static std::map<int, std::vector<std::int64_t>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::int64_t> num(static_cast<std::size_t>(N) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(N)] = 1;
    for (int d = 1; d < N; ++d) {
        if (N % d) continue;
        const auto &den = cyclotomic(d);
        // exact division of monic integer polynomials
        std::vector<std::int64_t> quo(num.size() - den.size() + 1, 0);
        for (std::size_t i = num.size(); i-- >= den.size();) {
            const std::int64_t c = num[i];
            quo[i - den.size() + 1] = c;
            for (std::size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
            if (i == den.size() - 1) break;
        }
        num = quo;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(N, num).first->second;
}

inline int totient(int N) { return static_cast<int>(cyclotomic(N).size()) - 1; }

} // namespace detail

class RingElem
{
public:
    RingElem() = default;
    RingElem(std::int64_t c) // NOLINT: integers embed implicitly
    {
        if (c) terms_[0] = {c};
    }

    /// z_N^a v^w
    static RingElem root(int N, std::int64_t a, int w = 0)
    {
        check(N >= 1, "root of unity order must be positive");
        RingElem r;
        r.N_ = N;
        std::vector<std::int64_t> dense(static_cast<std::size_t>(N), 0);
        dense[static_cast<std::size_t>(((a % N) + N) % N)] = 1;
        r.terms_[w] = reduce(N, std::move(dense));
        r.prune();
        return r;
    }

    static RingElem vpow(int w, std::int64_t c = 1)
    {
        RingElem r;
        if (c) r.terms_[w] = {c};
        return r;
    }

    int order() const noexcept { return N_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// (w, a, c) triples sorted by (w, a), zero coefficients omitted.
    std::vector<std::tuple<int, int, std::int64_t>> terms() const
    {
        std::vector<std::tuple<int, int, std::int64_t>> out;
        for (auto &[w, v] : terms_) {
            for (std::size_t a = 0; a < v.size(); ++a) {
                if (v[a]) out.emplace_back(w, static_cast<int>(a), v[a]);
            }
        }
        return out;
    }

    /// Integer value if the element is an integer (no z or v).
    bool is_integer() const
    {
        if (terms_.empty()) return true;
        if (terms_.size() != 1 || terms_.begin()->first != 0) return false;
        const auto &v = terms_.begin()->second;
        for (std::size_t a = 1; a < v.size(); ++a) {
            if (v[a]) return false;
        }
        return true;
    }

    std::int64_t to_integer() const
    {
        check(is_integer(), "ring element is not an integer");
        return terms_.empty() ? 0 : terms_.begin()->second[0];
    }

    /// Same element expressed over Z[z_M], M a multiple of N.
    RingElem lifted(int M) const
    {
        if (M == N_) return *this;
        check(M % N_ == 0, "lift target must be a multiple of the order");
        const int step = M / N_;
        RingElem r;
        r.N_ = M;
        for (auto &[w, v] : terms_) {
            std::vector<std::int64_t> dense(static_cast<std::size_t>(M), 0);
            for (std::size_t a = 0; a < v.size(); ++a) dense[a * static_cast<std::size_t>(step)] = v[a];
            r.terms_[w] = reduce(M, std::move(dense));
        }
        r.prune();
        return r;
    }

    friend RingElem operator+(const RingElem &x, const RingElem &y)
    {
        const int M = std::lcm(x.N_, y.N_);
        RingElem a = x.lifted(M);
        const RingElem b = y.lifted(M);
        for (auto &[w, v] : b.terms_) {
            auto &dst = a.terms_[w];
            dst.resize(static_cast<std::size_t>(detail::totient(M)), 0);
            for (std::size_t i = 0; i < v.size(); ++i) dst[i] = detail::checked_add(dst[i], v[i]);
        }
        a.prune();
        return a;
    }

    RingElem operator-() const
    {
        RingElem r = *this;
        for (auto &[w, v] : r.terms_) {
            for (auto &c : v) c = -c;
        }
        return r;
    }

    friend RingElem operator-(const RingElem &x, const RingElem &y) { return x + (-y); }

    friend RingElem operator*(const RingElem &x, const RingElem &y)
    {
        if (x.is_zero() || y.is_zero()) return RingElem();
        const int M = std::lcm(x.N_, y.N_);
        const RingElem a = x.lifted(M), b = y.lifted(M);
        std::map<int, std::vector<std::int64_t>> acc;
        for (auto &[w1, v1] : a.terms_) {
            for (auto &[w2, v2] : b.terms_) {
                auto &dense = acc[w1 + w2];
                dense.resize(static_cast<std::size_t>(M), 0);
                for (std::size_t i = 0; i < v1.size(); ++i) {
                    if (!v1[i]) continue;
                    for (std::size_t j = 0; j < v2.size(); ++j) {
                        if (!v2[j]) continue;
                        auto &slot = dense[(i + j) % static_cast<std::size_t>(M)];
                        slot = detail::checked_add(slot, detail::checked_mul(v1[i], v2[j]));
                    }
                }
            }
        }
        RingElem r;
        r.N_ = M;
        for (auto &[w, dense] : acc) r.terms_[w] = reduce(M, std::move(dense));
        r.prune();
        return r;
    }

    RingElem &operator+=(const RingElem &o) { return *this = *this + o; }
    RingElem &operator-=(const RingElem &o) { return *this = *this - o; }
    RingElem &operator*=(const RingElem &o) { return *this = *this * o; }

    /// Exact division by a nonzero integer; throws if not exact.
    RingElem div_exact(std::int64_t d) const
    {
        check(d != 0, "division by zero");
        RingElem r = *this;
        for (auto &[w, v] : r.terms_) {
            for (auto &c : v) {
                check(c % d == 0, "inexact division in coefficient ring");
                c /= d;
            }
        }
        return r;
    }

    /// Multiply by v^k.
    RingElem shift_v(int k) const
    {
        RingElem r;
        r.N_ = N_;
        for (auto &[w, v] : terms_) r.terms_[w + k] = v;
        return r;
    }

    /// Coefficient of v^w (as an element with the same order).
    RingElem v_coefficient(int w) const
    {
        RingElem r;
        r.N_ = N_;
        auto it = terms_.find(w);
        if (it != terms_.end()) r.terms_[0] = it->second;
        return r;
    }

    /// Largest v exponent present (or INT_MIN for zero).
    int top_weight() const { return terms_.empty() ? -(1 << 30) : terms_.rbegin()->first; }

    friend bool operator==(const RingElem &x, const RingElem &y) { return (x - y).is_zero(); }
    friend bool operator!=(const RingElem &x, const RingElem &y) { return !(x == y); }

    /// e.g. "4", "1+2*z4^1", "3*v^2+z4^3*v^-1".
    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto &[w, a, c] : terms()) {
            std::string mono;
            if (a) mono = "z" + std::to_string(N_) + "^" + std::to_string(a);
            if (w) mono += std::string(mono.empty() ? "" : "*") + "v^" + std::to_string(w);
            std::string term;
            if (mono.empty()) {
                term = std::to_string(c);
            } else if (c == 1) {
                term = mono;
            } else if (c == -1) {
                term = "-" + mono;
            } else {
                term = std::to_string(c) + "*" + mono;
            }
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        return out;
    }

    /// {"N":N,"terms":[{"a":..,"w":..,"c":..},...]} sorted by (w, a).
    std::string json() const
    {
        std::string out = "{\"N\":" + std::to_string(N_) + ",\"terms\":[";
        bool first = true;
        for (auto &[w, a, c] : terms()) {
            if (!first) out += ",";
            first = false;
            out += "{\"a\":" + std::to_string(a) + ",\"w\":" + std::to_string(w) + ",\"c\":" + std::to_string(c) + "}";
        }
        return out + "]}";
    }

private:
    // Reduce a dense vector of length M (exponents mod M) to the power basis mod Phi_M.
    static std::vector<std::int64_t> reduce(int M, std::vector<std::int64_t> dense)
    {
        const auto &phi = detail::cyclotomic(M);
        const std::size_t deg = phi.size() - 1;
        for (std::size_t i = dense.size(); i-- > deg;) {
            const std::int64_t c = dense[i];
            if (!c) continue;
            dense[i] = 0;
            for (std::size_t j = 0; j < deg; ++j) {
                if (phi[j]) dense[i - deg + j] = detail::checked_add(dense[i - deg + j], -detail::checked_mul(c, phi[j]));
            }
        }
        dense.resize(deg);
        return dense;
    }

    void prune()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            bool zero = true;
            for (auto c : it->second) zero = zero && c == 0;
            if (zero) it = terms_.erase(it);
            else ++it;
        }
    }

    int N_ = 1;
    std::map<int, std::vector<std::int64_t>> terms_;
};

inline std::ostream &operator<<(std::ostream &os, const RingElem &x) { return os << x.str(); }

inline RingElem pow(const RingElem &x, unsigned e)
{
    RingElem r(1), b = x;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

/// Specialize v^2 -> q after clearing negative even powers: compares x and y
/// as numbers where v^2 = q (v itself kept formal in odd degrees).
inline bool weight_equal(const RingElem &x, const RingElem &y, std::int64_t q)
{
    const RingElem d = x - y;
    if (d.is_zero()) return true;
    // Per (parity of w, a): sum_k c_k q^k must vanish. Carry from the lowest
    // power upward so no large powers of q are formed.
    std::map<std::pair<int, int>, std::map<int, std::int64_t>> groups;
    for (auto &[w, a, c] : d.terms()) {
        const int r = ((w % 2) + 2) % 2;
        groups[{r, a}][(w - r) / 2] = c;
    }
    for (auto &[key, seq] : groups) {
        std::int64_t carry = 0;
        int k = seq.begin()->first;
        const int top = seq.rbegin()->first;
        for (; k <= top; ++k) {
            auto it = seq.find(k);
            const std::int64_t c = detail::checked_add(carry, it == seq.end() ? 0 : it->second);
            if (k == top) {
                if (c != 0) return false;
                break;
            }
            if (c % q != 0) return false;
            carry = c / q;
        }
    }
    return true;
}

/// Truncated power series in t with RingElem coefficients.
using RingSeries = std::vector<RingElem>;

inline RingSeries series_mul(const RingSeries &a, const RingSeries &b, std::size_t len)
{
    RingSeries r(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

/// 1/a for a series with constant term 1.
inline RingSeries series_inv(const RingSeries &a, std::size_t len)
{
    check(!a.empty() && a[0] == RingElem(1), "series inverse needs constant term 1");
    RingSeries r(len);
    r[0] = RingElem(1);
    for (std::size_t n = 1; n < len; ++n) {
        RingElem acc;
        for (std::size_t j = 1; j <= n && j < a.size(); ++j) {
            if (!a[j].is_zero()) acc += a[j] * r[n - j];
        }
        r[n] = -acc;
    }
    return r;
}

inline std::string series_json(const RingSeries &s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s[i].json();
    }
    return out + "]";
}

} // namespace tracelab
