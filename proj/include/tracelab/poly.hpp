#pragma once

// Dense univariate polynomials over a Field.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace tracelab {

class Poly
{
public:
    Poly() = default;
    explicit Poly(const Field *F) : F_(F) {}
    Poly(const Field *F, std::vector<elem> coeffs) : F_(F), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Field *F, elem a) { return Poly(F, {a}); }
    static Poly x(const Field *F) { return Poly(F, {0, 1}); }
    // x - a
    static Poly linear(const Field *F, elem a) { return Poly(F, {F->neg(a), 1}); }
    static Poly monomial(const Field *F, elem a, std::size_t d)
    {
        std::vector<elem> c(d + 1, 0);
        c[d] = a;
        return Poly(F, std::move(c));
    }

    const Field *field() const noexcept { return F_; }
    const std::vector<elem> &coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    elem lc() const noexcept { return c_.empty() ? 0 : c_.back(); }
    elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    void set(std::size_t i, elem a)
    {
        if (i >= c_.size()) c_.resize(i + 1, 0);
        c_[i] = a;
        trim();
    }

    elem eval(elem a) const noexcept
    {
        elem r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, a), c_[i]);
        return r;
    }

    Poly monic() const
    {
        if (c_.empty()) return *this;
        return scale(F_->inv(lc()));
    }

    Poly scale(elem a) const
    {
        if (a == 0) return Poly(F_);
        std::vector<elem> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], a);
        return Poly(F_, std::move(r));
    }

    Poly operator-() const
    {
        std::vector<elem> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->neg(c_[i]);
        return Poly(F_, std::move(r));
    }

    friend Poly operator+(const Poly &a, const Poly &b)
    {
        const Field *F = a.F_ ? a.F_ : b.F_;
        std::vector<elem> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->add(a[i], b[i]);
        return Poly(F, std::move(r));
    }

    friend Poly operator-(const Poly &a, const Poly &b)
    {
        const Field *F = a.F_ ? a.F_ : b.F_;
        std::vector<elem> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->sub(a[i], b[i]);
        return Poly(F, std::move(r));
    }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        const Field *F = a.F_ ? a.F_ : b.F_;
        if (a.is_zero() || b.is_zero()) return Poly(F);
        std::vector<elem> r(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j]) r[i + j] = F->add(r[i + j], F->mul(a.c_[i], b.c_[j]));
            }
        }
        return Poly(F, std::move(r));
    }

    Poly &operator+=(const Poly &o) { return *this = *this + o; }
    Poly &operator-=(const Poly &o) { return *this = *this - o; }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }

    // Quotient and remainder; b must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b)
    {
        if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
        const Field *F = b.F_;
        if (a.degree() < b.degree()) return {Poly(F), a};
        std::vector<elem> r = a.c_;
        std::vector<elem> quo(a.c_.size() - b.c_.size() + 1, 0);
        const elem li = F->inv(b.lc());
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t i = r.size(); i-- > db;) {
            const elem c = F->mul(r[i], li);
            if (!c) continue;
            quo[i - db] = c;
            for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F->sub(r[i - db + j], F->mul(c, b.c_[j]));
        }
        r.resize(db);
        return {Poly(F, std::move(quo)), Poly(F, std::move(r))};
    }

    friend Poly operator/(const Poly &a, const Poly &b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly &a, const Poly &b) { return divmod(a, b).second; }

    friend bool operator==(const Poly &a, const Poly &b) noexcept { return a.c_ == b.c_; }
    friend bool operator!=(const Poly &a, const Poly &b) noexcept { return !(a == b); }

    // Degree first, then coefficients compared from the top degree down.
    friend bool operator<(const Poly &a, const Poly &b) noexcept
    {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;) {
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        }
        return false;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1) return Poly(F_);
        std::vector<elem> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F_->mul(c_[i], F_->from_int(static_cast<std::int64_t>(i % F_->p())));
        return Poly(F_, std::move(r));
    }

    // Canonical text: "c_d*x^d+...+c_0", zero terms skipped, unit coefficients omitted.
    std::string str() const
    {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!out.empty()) out += "+";
            if (i == 0) {
                out += std::to_string(c_[i]);
                continue;
            }
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    const Field *F_ = nullptr;
    std::vector<elem> c_;
};

// Integer literal to field element: values in [0, q) are encodings; negative
// values negate the encoding of their absolute value.
inline elem element_from_literal(const Field &F, std::int64_t v)
{
    if (v < 0) return F.neg(element_from_literal(F, -v));
    if (F.k() == 1) return F.from_int(v);
    if (static_cast<std::uint64_t>(v) >= F.q()) {
        throw Error(ErrorKind::Parse, "coefficient " + std::to_string(v) + " out of range for " + F.name());
    }
    return static_cast<elem>(v);
}

inline Poly parse_poly(const Field *F, const std::string &text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty()) throw Error(ErrorKind::Parse, "empty polynomial");
    Poly out(F);
    std::size_t i = 0;
    auto fail = [&](const std::string &why) { throw Error(ErrorKind::Parse, "bad polynomial '" + text + "': " + why); };
    auto read_int = [&](std::int64_t &v) {
        const std::size_t start = i;
        v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > (std::int64_t(1) << 40)) fail("number too large");
            ++i;
        }
        return i > start;
    };
    bool first = true;
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (!first) {
            fail("expected '+'");
        }
        first = false;
        std::int64_t coeff = 1;
        bool have_coeff = read_int(coeff);
        if (!have_coeff) coeff = 1;
        std::int64_t deg = 0;
        if (have_coeff && i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'x') fail("expected x after '*'");
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (!read_int(deg)) fail("expected exponent");
                if (deg > 4096) fail("degree too large");
            }
        } else if (!have_coeff) {
            fail("expected term");
        }
        elem c = element_from_literal(*F, coeff);
        if (negative) c = F->neg(c);
        out.set(static_cast<std::size_t>(deg), F->add(out[static_cast<std::size_t>(deg)], c));
    }
    return out;
}

inline Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g, g monic (or zero when a = b = 0).
inline std::tuple<Poly, Poly, Poly> xgcd(const Poly &a, const Poly &b)
{
    const Field *F = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b, s0 = Poly::constant(F, 1), s1(F), t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [qq, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - qq * s1, t2 = t0 - qq * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const elem li = F->inv(r0.lc());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

inline Poly pow(Poly a, std::uint64_t e)
{
    Poly r = Poly::constant(a.field(), 1);
    while (e) {
        if (e & 1) r *= a;
        e >>= 1;
        if (e) a *= a;
    }
    return r;
}

inline Poly powmod(Poly a, std::uint64_t e, const Poly &m)
{
    Poly r = Poly::constant(m.field(), 1) % m;
    a = a % m;
    while (e) {
        if (e & 1) r = (r * a) % m;
        e >>= 1;
        if (e) a = (a * a) % m;
    }
    return r;
}

// Coefficientwise image under a field map (embedding or its inverse).
inline Poly map_coeffs(const Poly &a, const Field *target, const std::vector<elem> &table)
{
    std::vector<elem> r(a.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = table[a.coeffs()[i]];
        check(r[i] != 0xffffffffu, "coefficient outside subfield");
    }
    return Poly(target, std::move(r));
}

inline Poly embed(const Poly &a, const Field &big)
{
    if (a.field() == &big) return a;
    return map_coeffs(a, &big, embedding(*a.field(), big)->first);
}

inline Poly descend(const Poly &a, const Field &small)
{
    if (a.field() == &small) return a;
    return map_coeffs(a, &small, embedding(small, *a.field())->second);
}

inline elem embed(elem a, const Field &small, const Field &big)
{
    if (&small == &big) return a;
    return embedding(small, big)->first[a];
}

inline std::optional<elem> descend(elem a, const Field &small, const Field &big)
{
    if (&small == &big) return a;
    const elem r = embedding(small, big)->second[a];
    if (r == 0xffffffffu) return std::nullopt;
    return r;
}

// p-th root of a polynomial all of whose exponents are multiples of p.
inline Poly pth_root(const Poly &f)
{
    const Field *F = f.field();
    const std::uint32_t p = F->p();
    const std::uint64_t root_exp = F->q() / p;
    std::vector<elem> r(f.degree() / p + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->pow(f[i * p], root_exp);
    return Poly(F, std::move(r));
}

/// f = lc * prod A_m^m with A_m monic, squarefree and pairwise coprime.
/// Returned in increasing order of multiplicity; A_m = 1 entries omitted.
inline std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly &f)
{
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "squarefree decomposition of zero");
    std::map<int, Poly> acc;
    auto put = [&](const Poly &a, int m) {
        auto it = acc.find(m);
        if (it == acc.end()) acc.emplace(m, a);
        else it->second = it->second * a;
    };
    std::vector<std::pair<Poly, int>> stack{{f.monic(), 1}};
    while (!stack.empty()) {
        auto [g, scale] = stack.back();
        stack.pop_back();
        if (g.degree() <= 0) continue;
        Poly c = gcd(g, g.derivative());
        Poly w = g / c;
        int i = 1;
        while (w.degree() > 0) {
            Poly y = gcd(w, c);
            Poly z = w / y;
            if (z.degree() > 0) put(z.monic(), i * scale);
            ++i;
            w = y;
            c = c / y;
        }
        if (c.degree() > 0) stack.push_back({pth_root(c.monic()), scale * static_cast<int>(g.field()->p())});
    }
    std::vector<std::pair<Poly, int>> out;
    for (auto &[m, a] : acc) out.emplace_back(a, m);
    return out;
}

/// Canonical square root: sqrt(lc) * prod A_m^(m/2), or nullopt.
inline std::optional<Poly> perfect_square_root(const Poly &f)
{
    const Field *F = f.field();
    if (F->p() == 2) throw Error(ErrorKind::EvenCharacteristic, "square roots need odd characteristic");
    if (f.is_zero()) return f;
    auto s = F->sqrt(f.lc());
    if (!s) return std::nullopt;
    Poly g = Poly::constant(F, *s);
    for (auto &[a, m] : squarefree_decompose(f)) {
        if (m % 2) return std::nullopt;
        g *= pow(a, static_cast<std::uint64_t>(m / 2));
    }
    return g;
}

namespace detail {

inline std::mt19937_64 &factor_rng()
{
    thread_local std::mt19937_64 rng(0x7261636b6c616273ULL);
    return rng;
}

// x^(Q^e) mod f via repeated Q-th powering.
inline Poly frobenius_x(const Poly &f, std::uint64_t Q, unsigned e)
{
    Poly h = Poly::x(f.field()) % f;
    for (unsigned i = 0; i < e; ++i) h = powmod(h, Q, f);
    return h;
}

// Splits a monic squarefree f whose irreducible factors all have degree d.
inline void equal_degree_split(const Poly &f, int d, std::vector<Poly> &out)
{
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const Field *F = f.field();
    const std::uint64_t Q = F->q();
    auto &rng = factor_rng();
    while (true) {
        std::vector<elem> rc(static_cast<std::size_t>(f.degree()));
        for (auto &c : rc) c = static_cast<elem>(rng() % Q);
        Poly a(F, rc);
        if (a.degree() <= 0) continue;
        Poly b;
        if (F->p() == 2) {
            // Trace map a + a^2 + ... + a^(2^(k d - 1)).
            const unsigned steps = F->k() * static_cast<unsigned>(d);
            Poly t = a % f, acc = t;
            for (unsigned i = 1; i < steps; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            b = acc;
        } else {
            Poly cpow = powmod(a, (Q - 1) / 2, f);
            Poly acc = cpow;
            Poly cur = cpow;
            for (int i = 1; i < d; ++i) {
                cur = powmod(cur, Q, f);
                acc = (acc * cur) % f;
            }
            b = acc - Poly::constant(F, 1);
        }
        Poly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, out);
            equal_degree_split(f / g, d, out);
            return;
        }
    }
}

} // namespace detail

/// Monic irreducible factorization with multiplicities, sorted.
inline std::vector<std::pair<Poly, int>> factor(const Poly &f)
{
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factorization of zero");
    std::vector<std::pair<Poly, int>> out;
    const std::uint64_t Q = f.field()->q();
    for (auto &[a, m] : squarefree_decompose(f)) {
        Poly rest = a;
        Poly h = Poly::x(a.field()) % rest;
        for (int d = 1; 2 * d <= rest.degree(); ++d) {
            h = powmod(h, Q, rest);
            Poly g = gcd(rest, h - Poly::x(a.field()));
            if (g.degree() > 0) {
                std::vector<Poly> parts;
                detail::equal_degree_split(g, d, parts);
                for (auto &pp : parts) out.emplace_back(pp, m);
                rest = rest / g;
                h = h % rest;
            }
        }
        if (rest.degree() > 0) out.emplace_back(rest.monic(), m);
    }
    std::sort(out.begin(), out.end(), [](const auto &u, const auto &v) {
        if (u.first != v.first) return u.first < v.first;
        return u.second < v.second;
    });
    return out;
}

/// Distinct roots of f in `big` (f's field must be a subfield of big), sorted.
inline std::vector<elem> roots_in(const Poly &f, const Field &big)
{
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of zero");
    Poly g = embed(f, big).monic();
    if (g.degree() <= 0) return {};
    Poly xq = detail::frobenius_x(g, big.q(), 1);
    Poly lin = gcd(g, xq - Poly::x(&big));
    std::vector<elem> out;
    if (lin.degree() <= 0) return out;
    std::vector<Poly> parts;
    detail::equal_degree_split(lin, 1, parts);
    for (auto &pp : parts) out.push_back(big.neg(pp[0]));
    std::sort(out.begin(), out.end());
    return out;
}

/// Rabin test over the polynomial's own field.
inline bool is_irreducible(const Poly &f)
{
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    const Poly g = f.monic();
    const std::uint64_t Q = g.field()->q();
    const unsigned n = static_cast<unsigned>(g.degree());
    const Poly xx = Poly::x(g.field());
    if (!((detail::frobenius_x(g, Q, n) - xx) % g).is_zero()) return false;
    for (auto r : detail::prime_factors(n)) {
        if (gcd(g, detail::frobenius_x(g, Q, n / static_cast<unsigned>(r)) - xx).degree() != 0) return false;
    }
    return true;
}

/// Size of the orbit of a (in `big`) under a -> a^q.
inline unsigned orbit_size(elem a, const Field &big, std::uint64_t q)
{
    unsigned n = 1;
    elem b = big.pow(a, q);
    while (b != a) {
        b = big.pow(b, q);
        ++n;
    }
    return n;
}

inline std::vector<elem> orbit(elem a, const Field &big, std::uint64_t q)
{
    std::vector<elem> out{a};
    elem b = big.pow(a, q);
    while (b != a) {
        out.push_back(b);
        b = big.pow(b, q);
    }
    return out;
}

/// Minimal polynomial over `base` of an element of the extension `big`.
inline Poly minimal_polynomial(elem a, const Field &base, const Field &big)
{
    Poly m = Poly::constant(&big, 1);
    for (elem b : orbit(a, big, base.q())) m *= Poly::linear(&big, b);
    return descend(m, base);
}

/// Every monic irreducible of degree n over F, in increasing order, each paired
/// with its least root in the degree-n extension.
inline std::vector<std::pair<Poly, elem>> monic_irreducibles_with_roots(const Field &F, unsigned n)
{
    check(n >= 1, "degree must be positive");
    auto big = extension(F, n);
    std::vector<std::pair<Poly, elem>> out;
    const std::uint64_t q = F.q();
    for (elem a = 0; a < big->q(); ++a) {
        auto orb = orbit(a, *big, q);
        if (orb.size() != n) continue;
        if (*std::min_element(orb.begin(), orb.end()) != a) continue;
        Poly m = Poly::constant(big.get(), 1);
        for (elem b : orb) m *= Poly::linear(big.get(), b);
        out.emplace_back(descend(m, F), a);
    }
    std::sort(out.begin(), out.end(), [](const auto &u, const auto &v) { return u.first < v.first; });
    return out;
}

inline std::vector<Poly> monic_irreducibles(const Field &F, unsigned n)
{
    std::vector<Poly> out;
    for (auto &pr : monic_irreducibles_with_roots(F, n)) out.push_back(std::move(pr.first));
    return out;
}

/// Necklace count (1/n) sum_{e | n} mu(e) q^(n/e).
inline std::int64_t necklace_count(std::int64_t q, unsigned n)
{
    auto mobius = [](unsigned m) {
        int r = 1;
        for (unsigned p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                r = -r;
            }
        }
        if (m > 1) r = -r;
        return r;
    };
    std::int64_t total = 0;
    for (unsigned e = 1; e <= n; ++e) {
        if (n % e) continue;
        std::int64_t pw = 1;
        for (unsigned i = 0; i < n / e; ++i) pw *= q;
        total += mobius(e) * pw;
    }
    return total / n;
}

/// Lagrange interpolation through (xs[i], ys[i]); xs distinct.
inline Poly interpolate(const Field *F, const std::vector<elem> &xs, const std::vector<elem> &ys)
{
    Poly out(F);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly term = Poly::constant(F, ys[i]);
        elem denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            term *= Poly::linear(F, xs[j]);
            denom = F->mul(denom, F->sub(xs[i], xs[j]));
        }
        out += term.scale(F->inv(denom));
    }
    return out;
}

} // namespace tracelab
