#pragma once

// Finite fields F_{p^k} with log/exp tables.
//
// Elements are encoded as integers in [0, q): the base-p digits of the encoding
// are the coefficients (low degree first) of the residue polynomial modulo the
// defining polynomial. This encoding is canonical, so equality is integer
// equality and ordering is integer ordering.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tracelab {

using elem = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over the prime field F_p, used only while searching for
// defining polynomials (before any Field object exists).
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly &a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p)
{
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline FpPoly fp_mod(FpPoly a, const FpPoly &m, std::uint32_t p)
{
    fp_trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t li = fp_inv(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = a.back() * li % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
        }
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_mulmod(const FpPoly &a, const FpPoly &b, const FpPoly &m, std::uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
        }
    }
    return fp_mod(std::move(r), m, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p)
{
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^e) mod m
inline FpPoly fp_frobenius_power(const FpPoly &m, std::uint32_t p, unsigned e)
{
    FpPoly cur = fp_mod(FpPoly{0, 1}, m, p);
    for (unsigned i = 0; i < e; ++i) {
        FpPoly r{1}, base = cur;
        std::uint64_t n = p;
        while (n) {
            if (n & 1) r = fp_mulmod(r, base, m, p);
            base = fp_mulmod(base, base, m, p);
            n >>= 1;
        }
        cur = r;
    }
    return cur;
}

// Rabin's irreducibility test over F_p.
inline bool fp_is_irreducible(const FpPoly &m, std::uint32_t p)
{
    const unsigned k = static_cast<unsigned>(m.size() - 1);
    if (k == 1) return true;
    auto minus_x = [&](FpPoly a) {
        if (a.size() < 2) a.resize(2, 0);
        a[1] = (a[1] + p - 1) % p;
        fp_trim(a);
        return a;
    };
    if (!minus_x(fp_frobenius_power(m, p, k)).empty()) return false;
    for (auto r : prime_factors(k)) {
        FpPoly g = fp_gcd(m, minus_x(fp_frobenius_power(m, p, k / static_cast<unsigned>(r))), p);
        if (g.size() != 1) return false;
    }
    return true;
}

inline std::atomic<std::uint64_t> &field_cap_storage()
{
    static std::atomic<std::uint64_t> cap{std::uint64_t(1) << 20};
    return cap;
}

} // namespace detail

/// Upper bound on field cardinality accepted by make_field (default 2^20).
inline std::uint64_t field_cap() { return detail::field_cap_storage().load(); }
inline void set_field_cap(std::uint64_t cap) { detail::field_cap_storage().store(cap); }

class Field
{
public:
    Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
        : p_(p), k_(k), modulus_(std::move(modulus))
    {
        q_ = 1;
        for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
        pw_.resize(k_ + 1);
        pw_[0] = 1;
        for (std::uint32_t i = 1; i <= k_; ++i) pw_[i] = pw_[i - 1] * p_;
        build_tables();
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t> &modulus() const noexcept { return modulus_; }
    elem generator() const noexcept { return gen_; }

    static constexpr elem zero() noexcept { return 0; }
    static constexpr elem one() noexcept { return 1; }

    elem from_int(std::int64_t v) const noexcept
    {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<elem>(r);
    }

    elem add(elem a, elem b) const noexcept
    {
        if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
        if (p_ == 2) return a ^ b;
        if (k_ == 1) return (a + b) % p_;
        elem r = 0;
        for (std::uint32_t i = 0; i < k_; ++i) {
            r += ((a % p_ + b % p_) % p_) * pw_[i];
            a /= p_;
            b /= p_;
        }
        return r;
    }

    elem neg(elem a) const noexcept
    {
        if (p_ == 2) return a;
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        elem r = 0;
        for (std::uint32_t i = 0; i < k_; ++i) {
            r += ((p_ - a % p_) % p_) * pw_[i];
            a /= p_;
        }
        return r;
    }

    elem sub(elem a, elem b) const noexcept { return add(a, neg(b)); }

    elem mul(elem a, elem b) const noexcept
    {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    elem inv(elem a) const
    {
        if (a == 0) throw Error(ErrorKind::Internal, "inverse of zero");
        return log_[a] == 0 ? 1 : exp_[(q_ - 1) - log_[a]];
    }

    elem div(elem a, elem b) const { return mul(a, inv(b)); }

    elem pow(elem a, std::uint64_t e) const noexcept
    {
        if (e == 0) return 1;
        if (a == 0) return 0;
        return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
    }

    /// Discrete log to the base generator(); a must be nonzero.
    std::uint32_t log(elem a) const noexcept { return log_[a]; }
    elem exp(std::uint64_t e) const noexcept { return exp_[e % (q_ - 1)]; }

    elem frobenius(elem a) const noexcept { return pow(a, p_); }

    bool is_square(elem a) const noexcept
    {
        if (a == 0 || p_ == 2) return true;
        return log_[a] % 2 == 0;
    }

    /// Canonical square root: generator^(log/2) (the even representative of log when p = 2).
    std::optional<elem> sqrt(elem a) const noexcept
    {
        if (a == 0) return elem(0);
        std::uint64_t e = log_[a];
        if (p_ == 2) {
            if (e % 2) e += q_ - 1;
            return exp_[(e / 2) % (q_ - 1)];
        }
        if (e % 2) return std::nullopt;
        return exp_[e / 2];
    }

    /// Least y with y^2 + y = c (characteristic 2 only).
    std::optional<elem> artin_schreier_root(elem c) const noexcept
    {
        if (as_root_.empty()) return std::nullopt;
        const elem y = as_root_[c];
        if (y == none_) return std::nullopt;
        return y;
    }

    std::vector<std::uint32_t> digits(elem a) const
    {
        std::vector<std::uint32_t> d(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    elem from_digits(const std::vector<std::uint32_t> &d) const
    {
        elem r = 0;
        for (std::size_t i = 0; i < d.size() && i < k_; ++i) r += (d[i] % p_) * pw_[i];
        return r;
    }

    std::string name() const { return "F_" + std::to_string(q_); }

private:
    static constexpr elem none_ = 0xffffffffu;

    // Multiplication of digit vectors modulo the defining polynomial.
    elem slow_mul(elem a, elem b) const
    {
        auto da = digits(a), db = digits(b);
        std::vector<std::uint64_t> r(2 * k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i) {
            if (!da[i]) continue;
            for (std::uint32_t j = 0; j < k_; ++j) r[i + j] = (r[i + j] + std::uint64_t(da[i]) * db[j]) % p_;
        }
        for (std::size_t i = r.size(); i-- > k_;) {
            const std::uint64_t c = r[i];
            if (!c) continue;
            r[i] = 0;
            for (std::uint32_t j = 0; j < k_; ++j) {
                r[i - k_ + j] = (r[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
            }
        }
        elem out = 0;
        for (std::uint32_t i = 0; i < k_; ++i) out += static_cast<elem>(r[i]) * pw_[i];
        return out;
    }

    elem slow_pow(elem a, std::uint64_t e) const
    {
        elem r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    }

    void build_tables()
    {
        const std::uint64_t order = q_ - 1;
        const auto primes = detail::prime_factors(order);
        gen_ = 0;
        for (elem g = 1; g < q_; ++g) {
            bool primitive = true;
            for (auto r : primes) {
                if (slow_pow(g, order / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gen_ = g;
                break;
            }
        }
        if (q_ == 2) gen_ = 1;
        check(gen_ != 0, "no primitive element");
        log_.assign(q_, 0);
        exp_.assign(2 * order + 1, 0);
        elem cur = 1;
        for (std::uint64_t i = 0; i < order; ++i) {
            exp_[i] = cur;
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = slow_mul(cur, gen_);
        }
        for (std::uint64_t i = order; i < exp_.size(); ++i) exp_[i] = exp_[i - order];
        if (q_ <= 1024 && k_ > 1) {
            add_table_.resize(std::size_t(q_) * q_);
            for (elem a = 0; a < q_; ++a) {
                auto da = digits(a);
                for (elem b = 0; b < q_; ++b) {
                    elem r = 0, bb = b;
                    for (std::uint32_t i = 0; i < k_; ++i) {
                        r += ((da[i] + bb % p_) % p_) * pw_[i];
                        bb /= p_;
                    }
                    add_table_[std::size_t(a) * q_ + b] = r;
                }
            }
        }
        if (p_ == 2) {
            as_root_.assign(q_, none_);
            for (elem y = q_; y-- > 0;) as_root_[add(mul(y, y), y)] = y;
        }
    }

    std::uint32_t p_, k_, q_ = 1;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pw_;
    elem gen_ = 0;
    std::vector<std::uint32_t> log_;
    std::vector<elem> exp_;
    std::vector<elem> add_table_;
    std::vector<elem> as_root_;
};

using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t k)
{
    if (k == 1) return {0, 1};
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) total *= p;
    // Index digits run from c_{k-1} (most significant) down to c_0, so
    // increasing index is lexicographic order read from the top coefficient.
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        FpPoly m(k + 1, 0);
        m[k] = 1;
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < k; ++i) {
            m[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        if (m[0] == 0) continue;
        if (fp_is_irreducible(m, p)) return m;
    }
    throw Error(ErrorKind::Internal, "no irreducible polynomial found");
}

struct FieldCache {
    std::mutex mu;
    std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> fields;
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::shared_ptr<const std::pair<std::vector<elem>, std::vector<elem>>>> embeddings;
};

inline FieldCache &field_cache()
{
    static FieldCache cache;
    return cache;
}

} // namespace detail

/// F_{p^k} with the lexicographically least monic irreducible modulus.
inline FieldPtr make_field(std::uint64_t p, std::uint64_t k = 1)
{
    if (!detail::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (k < 1) throw Error(ErrorKind::Parse, "extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        q *= p;
        if (q > field_cap()) {
            throw Error(ErrorKind::CapExceeded, "field size " + std::to_string(p) + "^" + std::to_string(k) + " exceeds cap " + std::to_string(field_cap()));
        }
    }
    auto &cache = detail::field_cache();
    const auto key = std::make_pair(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.fields.find(key);
        if (it != cache.fields.end()) return it->second;
    }
    auto f = std::make_shared<const Field>(key.first, key.second, detail::least_irreducible(key.first, key.second));
    std::lock_guard<std::mutex> lock(cache.mu);
    return cache.fields.emplace(key, std::move(f)).first->second;
}

/// Field with q from a prime power; throws NotPrime if q is not a prime power.
inline FieldPtr make_field_q(std::uint64_t q)
{
    if (q < 2) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint64_t k = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++k;
    }
    if (t != 1) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
    return make_field(p, k);
}

/// The degree-n extension F_{q^n} of F.
inline FieldPtr extension(const Field &F, std::uint32_t n) { return make_field(F.p(), std::uint64_t(F.k()) * n); }

/// Canonical embedding of `small` into `big` (image of the small generator
/// residue x is the least root of small's modulus in big), together with the
/// inverse partial map (0xffffffff where undefined).
inline std::shared_ptr<const std::pair<std::vector<elem>, std::vector<elem>>> embedding(const Field &small, const Field &big)
{
    check(small.p() == big.p() && big.k() % small.k() == 0, "embedding requires a subfield");
    auto &cache = detail::field_cache();
    const auto key = std::make_tuple(small.p(), small.k(), big.k());
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.embeddings.find(key);
        if (it != cache.embeddings.end()) return it->second;
    }
    elem root = 0;
    if (small.k() > 1) {
        const auto &m = small.modulus();
        bool found = false;
        for (elem r = 0; r < big.q() && !found; ++r) {
            elem acc = 0;
            for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, r), m[i]);
            if (acc == 0) {
                root = r;
                found = true;
            }
        }
        check(found, "subfield modulus has no root");
    }
    auto tables = std::make_shared<std::pair<std::vector<elem>, std::vector<elem>>>();
    tables->first.resize(small.q());
    tables->second.assign(big.q(), 0xffffffffu);
    for (elem a = 0; a < small.q(); ++a) {
        elem img;
        if (small.k() == 1) {
            img = a;
        } else {
            const auto d = small.digits(a);
            img = 0;
            for (std::size_t i = d.size(); i-- > 0;) img = big.add(big.mul(img, root), d[i]);
        }
        tables->first[a] = img;
        tables->second[img] = a;
    }
    std::lock_guard<std::mutex> lock(cache.mu);
    return cache.embeddings.emplace(key, std::move(tables)).first->second;
}

} // namespace tracelab
