#pragma once

// Divisors and effective-divisor enumeration.

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "curve.hpp"
#include "error.hpp"

namespace tracelab {

namespace detail {

inline std::atomic<std::uint64_t> &enumeration_cap_storage()
{
    static std::atomic<std::uint64_t> cap{20'000'000};
    return cap;
}

} // namespace detail

/// Upper bound on the size of any exhaustive enumeration.
inline std::uint64_t enumeration_cap() { return detail::enumeration_cap_storage().load(); }
inline void set_enumeration_cap(std::uint64_t cap) { detail::enumeration_cap_storage().store(cap); }

inline void require_within_cap(std::uint64_t estimate, const std::string &what)
{
    if (estimate > enumeration_cap()) {
        throw Error(ErrorKind::CapExceeded, what + ": estimated size " + std::to_string(estimate) + " exceeds cap " + std::to_string(enumeration_cap()));
    }
}

class Divisor
{
public:
    Divisor() = default;
    explicit Divisor(const Place &p, int n = 1) { add(p, n); }

    void add(const Place &p, int n)
    {
        if (n == 0) return;
        auto it = terms_.find(p);
        if (it == terms_.end()) {
            terms_.emplace(p, n);
            return;
        }
        it->second += n;
        if (it->second == 0) terms_.erase(it);
    }

    const std::map<Place, int> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    int multiplicity(const Place &p) const
    {
        auto it = terms_.find(p);
        return it == terms_.end() ? 0 : it->second;
    }

    long degree() const
    {
        long d = 0;
        for (auto &[p, n] : terms_) d += long(n) * p.degree;
        return d;
    }

    bool is_effective() const
    {
        for (auto &[p, n] : terms_) {
            if (n < 0) return false;
        }
        return true;
    }

    Divisor positive_part() const
    {
        Divisor out;
        for (auto &[p, n] : terms_) {
            if (n > 0) out.add(p, n);
        }
        return out;
    }

    Divisor negative_part() const
    {
        Divisor out;
        for (auto &[p, n] : terms_) {
            if (n < 0) out.add(p, -n);
        }
        return out;
    }

    Divisor &operator+=(const Divisor &o)
    {
        for (auto &[p, n] : o.terms_) add(p, n);
        return *this;
    }
    Divisor &operator-=(const Divisor &o)
    {
        for (auto &[p, n] : o.terms_) add(p, -n);
        return *this;
    }
    friend Divisor operator+(Divisor a, const Divisor &b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor &b) { return a -= b; }
    friend Divisor operator*(int k, const Divisor &a)
    {
        Divisor out;
        for (auto &[p, n] : a.terms_) out.add(p, k * n);
        return out;
    }
    friend bool operator==(const Divisor &a, const Divisor &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Divisor &a, const Divisor &b) { return !(a == b); }
    friend bool operator<(const Divisor &a, const Divisor &b) { return a.terms_ < b.terms_; }

    /// "3*[x]+1*[inf]"; "0" for the zero divisor.
    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto &[p, n] : terms_) {
            if (!out.empty() && n > 0) out += "+";
            out += std::to_string(n) + "*[" + p.str() + "]";
        }
        return out;
    }

private:
    std::map<Place, int> terms_;
};

/// Place from its text form (as produced by Place::str()).
inline Place parse_place(const Curve &X, const std::string &s)
{
    const Field *F = &X.field();
    Place pl;
    const auto bar = s.find('|');
    const std::string head = s.substr(0, bar);
    const std::string tail = bar == std::string::npos ? std::string() : s.substr(bar + 1);
    const bool has_tail = bar != std::string::npos;
    if (head == "inf") {
        pl.inf = true;
        if (X.odd_model()) {
            if (has_tail) throw Error(ErrorKind::Parse, "this model has a single place at infinity");
            return X.infinity_place();
        }
        if (!has_tail) throw Error(ErrorKind::Parse, "place at infinity needs a branch");
        if (tail == "*") {
            pl.full = true;
            pl.degree = 2;
            if (!X.infinity_points(X.field()).empty()) throw Error(ErrorKind::Parse, "infinity splits on this model");
        } else {
            pl.v = parse_poly(F, tail);
            if (pl.v.degree() > 0) throw Error(ErrorKind::Parse, "branch at infinity must be constant");
            auto pts = X.infinity_points(X.field());
            bool ok = false;
            for (auto &P : pts) ok = ok || P.y == pl.v[0];
            if (!ok) throw Error(ErrorKind::Parse, "no branch at infinity with value " + tail);
        }
        pl.rep = X.representative(pl);
        return pl;
    }
    pl.u = parse_poly(F, head);
    if (!pl.u.is_monic() || !is_irreducible(pl.u)) throw Error(ErrorKind::Parse, "place polynomial must be monic irreducible: " + head);
    pl.degree = pl.u.degree();
    if (X.is_p1()) {
        if (has_tail) throw Error(ErrorKind::Parse, "places of P1 have no branch");
        pl.rep = X.representative(pl);
        return pl;
    }
    if (!has_tail) throw Error(ErrorKind::Parse, "affine place needs '|v' or '|*'");
    auto K = X.over(static_cast<unsigned>(pl.degree));
    const elem x0 = roots_in(pl.u, *K).front();
    const auto ys = Curve::solve_y(*K, embed(X.f(), *K).eval(x0), embed(X.h(), *K).eval(x0));
    if (tail == "*") {
        if (!ys.empty()) throw Error(ErrorKind::Parse, "fibre over " + head + " is not a single place");
        pl.full = true;
        pl.degree *= 2;
    } else {
        pl.v = parse_poly(F, tail);
        if (pl.v.degree() >= pl.u.degree()) throw Error(ErrorKind::Parse, "branch polynomial degree too large");
        const elem y0 = embed(pl.v, *K).eval(x0);
        if (std::find(ys.begin(), ys.end(), y0) == ys.end()) throw Error(ErrorKind::Parse, "branch " + tail + " is not on the curve");
    }
    pl.rep = X.representative(pl);
    return pl;
}

/// Divisor from "n*[place]+m*[place]..." text.
inline Divisor parse_divisor(const Curve &X, const std::string &s)
{
    Divisor D;
    if (s == "0") return D;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        if (s[j] == '+' || s[j] == '-') ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        std::string num = s.substr(i, j - i);
        if (num.empty() || num == "+") num += "1";
        if (num == "-") num = "-1";
        if (j >= s.size() || s[j] == '*') ++j;
        if (j >= s.size() || s[j] != '[') throw Error(ErrorKind::Parse, "expected '[' in divisor '" + s + "'");
        const auto close = s.find(']', j);
        if (close == std::string::npos) throw Error(ErrorKind::Parse, "unterminated place in divisor '" + s + "'");
        D.add(parse_place(X, s.substr(j + 1, close - j - 1)), static_cast<int>(detail::parse_int(num, "multiplicity")));
        i = close + 1;
    }
    return D;
}

/// Number of places of each degree 1..d.
inline std::vector<std::uint64_t> place_counts(const Curve &X, unsigned d)
{
    std::vector<std::uint64_t> out(d + 1, 0);
    for (unsigned e = 1; e <= d; ++e) out[e] = X.places_of_degree(e).size();
    return out;
}

/// Number of effective divisors of degree n for n = 0..d, from place counts:
/// coefficients of prod_e (1 - t^e)^(-n_e).
inline std::vector<std::uint64_t> effective_divisor_counts(const std::vector<std::uint64_t> &place_count, unsigned d)
{
    std::vector<std::uint64_t> c(d + 1, 0);
    c[0] = 1;
    for (unsigned e = 1; e <= d && e < place_count.size(); ++e) {
        for (std::uint64_t k = 0; k < place_count[e]; ++k) {
            for (unsigned n = e; n <= d; ++n) c[n] += c[n - e];
        }
    }
    return c;
}

inline std::uint64_t effective_divisor_count(const Curve &X, unsigned d)
{
    return effective_divisor_counts(place_counts(X, d), d)[d];
}

/// Calls fn on every effective divisor of degree d exactly once, in a fixed order.
inline void for_each_effective_divisor(const Curve &X, unsigned d, const std::function<void(const Divisor &)> &fn)
{
    require_within_cap(effective_divisor_count(X, d), "effective divisors of degree " + std::to_string(d));
    std::vector<const Place *> places;
    for (unsigned e = 1; e <= d; ++e) {
        for (auto &p : X.places_of_degree(e)) places.push_back(&p);
    }
    Divisor cur;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t idx, unsigned left) {
        if (left == 0) {
            fn(cur);
            return;
        }
        for (std::size_t i = idx; i < places.size(); ++i) {
            const unsigned pd = static_cast<unsigned>(places[i]->degree);
            if (pd > left) continue;
            cur.add(*places[i], 1);
            rec(i, left - pd);
            cur.add(*places[i], -1);
        }
    };
    rec(0, d);
}

inline std::vector<Divisor> effective_divisors(const Curve &X, unsigned d)
{
    std::vector<Divisor> out;
    for_each_effective_divisor(X, d, [&](const Divisor &D) { out.push_back(D); });
    return out;
}

} // namespace tracelab
