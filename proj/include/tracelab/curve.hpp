#pragma once

// Curve models y^2 + h(x) y = f(x), closed points and their enumeration.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "poly.hpp"

namespace tracelab {

enum class CurveKind { ProjectiveLine, Elliptic, Hyperelliptic };

inline const char *curve_kind_name(CurveKind k)
{
    switch (k) {
    case CurveKind::ProjectiveLine: return "P1";
    case CurveKind::Elliptic: return "Elliptic";
    case CurveKind::Hyperelliptic: return "Hyperelliptic";
    }
    return "?";
}

/// A geometric point with coordinates in some extension field (implicit).
/// At infinity, y carries the branch value s with s^2 = lc(f) for even-degree
/// models and is 0 otherwise.
struct Point {
    bool inf = false;
    elem x = 0;
    elem y = 0;

    friend bool operator==(const Point &a, const Point &b) { return a.inf == b.inf && a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point &a, const Point &b) { return std::tie(a.inf, a.x, a.y) < std::tie(b.inf, b.x, b.y); }
};

/// A closed point, identified by data rational over the base field:
///  - affine: u = minimal polynomial of x over F_q; either y = v(x) on the
///    whole orbit (v of degree < deg u), or `full` when the place is the whole
///    fibre of the curve over u (degree 2 deg u);
///  - infinity: `inf`; on even-degree models with two rational branches v is
///    the constant branch value, and `full` marks the single degree-2 place.
/// `rep` is one point of the orbit with coordinates in F_{q^degree}; it is not
/// part of the identity.
struct Place {
    int degree = 1;
    bool inf = false;
    bool full = false;
    Poly u;
    Poly v;
    Point rep;

    auto key() const { return std::tie(inf, degree, u, full, v); }
    friend bool operator==(const Place &a, const Place &b) { return a.key() == b.key(); }
    friend bool operator!=(const Place &a, const Place &b) { return !(a == b); }
    friend bool operator<(const Place &a, const Place &b) { return a.key() < b.key(); }

    std::string str() const
    {
        if (inf) {
            if (full) return "inf|*";
            if (!v.field()) return "inf";
            return "inf|" + v.str();
        }
        if (full) return u.str() + "|*";
        if (!v.field()) return u.str();
        return u.str() + "|" + v.str();
    }
};

class Curve;
using CurvePtr = std::shared_ptr<const Curve>;

class Curve
{
public:
    Curve(CurveKind kind, FieldPtr F, Poly f, Poly h) : kind_(kind), F_(std::move(F)), f_(std::move(f)), h_(std::move(h)), cache_(std::make_shared<Cache>())
    {
        if (kind_ == CurveKind::ProjectiveLine) {
            genus_ = 0;
            odd_model_ = true;
        } else {
            const int d = f_.degree();
            genus_ = (d + 1) / 2 - 1;
            odd_model_ = d % 2 == 1;
        }
        descriptor_ = make_descriptor();
    }

    CurveKind kind() const noexcept { return kind_; }
    const Field &field() const noexcept { return *F_; }
    FieldPtr field_ptr() const noexcept { return F_; }
    std::uint32_t q() const noexcept { return F_->q(); }
    int genus() const noexcept { return genus_; }
    const Poly &f() const noexcept { return f_; }
    const Poly &h() const noexcept { return h_; }
    bool is_p1() const noexcept { return kind_ == CurveKind::ProjectiveLine; }
    // One rational point at infinity (P^1 and odd-degree models).
    bool odd_model() const noexcept { return odd_model_; }
    const std::string &descriptor() const noexcept { return descriptor_; }

    FieldPtr over(unsigned n) const { return extension(*F_, n); }

    /// Solutions y in K of y^2 + h(x)y = f(x) given fx = f(x), hx = h(x); sorted.
    static std::vector<elem> solve_y(const Field &K, elem fx, elem hx)
    {
        std::vector<elem> out;
        if (K.p() == 2) {
            if (hx == 0) {
                out.push_back(*K.sqrt(fx));
                return out;
            }
            // y = hx z with z^2 + z = fx / hx^2
            auto z = K.artin_schreier_root(K.div(fx, K.mul(hx, hx)));
            if (!z) return out;
            out.push_back(K.mul(hx, *z));
            out.push_back(K.mul(hx, K.add(*z, 1)));
        } else {
            // (2y + hx)^2 = 4 fx + hx^2
            const elem disc = K.add(K.mul(K.from_int(4), fx), K.mul(hx, hx));
            auto s = K.sqrt(disc);
            if (!s) return out;
            const elem i2 = K.inv(K.from_int(2));
            out.push_back(K.mul(K.sub(*s, hx), i2));
            if (*s != 0) out.push_back(K.mul(K.sub(K.neg(*s), hx), i2));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool on_curve(const Field &K, const Point &P) const
    {
        if (P.inf) return true;
        if (is_p1()) return true;
        const Poly fK = embed(f_, K), hK = embed(h_, K);
        const elem lhs = K.add(K.mul(P.y, P.y), K.mul(hK.eval(P.x), P.y));
        return lhs == fK.eval(P.x);
    }

    /// #X(F_{q^n}) by exhaustive enumeration.
    std::uint64_t point_count(unsigned n) const
    {
        auto K = over(n);
        if (is_p1()) return std::uint64_t(K->q()) + 1;
        const Poly fK = embed(f_, *K), hK = embed(h_, *K);
        std::uint64_t count = infinity_points(*K).size();
        for (elem x = 0; x < K->q(); ++x) count += solve_y(*K, fK.eval(x), hK.eval(x)).size();
        return count;
    }

    /// Points at infinity with coordinates in K.
    std::vector<Point> infinity_points(const Field &K) const
    {
        if (odd_model_) return {Point{true, 0, 0}};
        std::vector<Point> out;
        const elem lcK = embed(f_.lc(), *F_, K);
        if (K.p() == 2) return {Point{true, 0, 0}};
        auto s = K.sqrt(lcK);
        if (!s) return out;
        out.push_back(Point{true, 0, *s});
        out.push_back(Point{true, 0, K.neg(*s)});
        std::sort(out.begin(), out.end());
        return out;
    }

    /// All points of X(K).
    std::vector<Point> points(const Field &K) const
    {
        std::vector<Point> out;
        if (is_p1()) {
            for (elem x = 0; x < K.q(); ++x) out.push_back(Point{false, x, 0});
            out.push_back(Point{true, 0, 0});
            return out;
        }
        const Poly fK = embed(f_, K), hK = embed(h_, K);
        for (elem x = 0; x < K.q(); ++x) {
            for (elem y : solve_y(K, fK.eval(x), hK.eval(x))) out.push_back(Point{false, x, y});
        }
        for (auto &P : infinity_points(K)) out.push_back(P);
        return out;
    }

    /// q-power Frobenius on a point of X(K).
    Point frobenius(const Field &K, const Point &P) const
    {
        return Point{P.inf, K.pow(P.x, q()), K.pow(P.y, q())};
    }

    /// The closed point through P, where P has coordinates in K.
    Place place_of_point(const Field &K, const Point &P) const
    {
        Place pl;
        if (P.inf) {
            pl.inf = true;
            if (odd_model_) {
                pl.rep = Point{true, 0, 0};
                return pl;
            }
            auto s = descend(P.y, *F_, K);
            if (s) {
                pl.v = Poly::constant(F_.get(), *s);
                pl.rep = Point{true, 0, *s};
                if (pl.v.is_zero()) pl.v = Poly(F_.get());
                return pl;
            }
            pl.full = true;
            pl.degree = 2;
            pl.rep = representative(pl);
            return pl;
        }
        pl.u = minimal_polynomial(P.x, *F_, K);
        const int m = pl.u.degree();
        if (is_p1()) {
            pl.degree = m;
            pl.rep = representative(pl);
            return pl;
        }
        std::uint64_t qm = 1;
        for (int i = 0; i < m; ++i) qm *= q();
        if (K.pow(P.y, qm) == P.y) {
            std::vector<elem> xs, ys;
            elem x = P.x, y = P.y;
            for (int i = 0; i < m; ++i) {
                xs.push_back(x);
                ys.push_back(y);
                x = K.pow(x, q());
                y = K.pow(y, q());
            }
            pl.v = descend(interpolate(&K, xs, ys), *F_);
            if (!pl.v.field()) pl.v = Poly(F_.get());
            pl.degree = m;
        } else {
            pl.full = true;
            pl.degree = 2 * m;
        }
        pl.rep = representative(pl);
        return pl;
    }

    /// Canonical orbit representative: least root of u, then least y branch.
    Point representative(const Place &pl) const
    {
        auto K = over(static_cast<unsigned>(pl.degree));
        if (pl.inf) {
            if (odd_model_) return Point{true, 0, 0};
            if (!pl.full) return Point{true, 0, embed(pl.v[0], *F_, *K)};
            auto pts = infinity_points(*K);
            check(!pts.empty(), "infinity branches not found");
            return pts.front();
        }
        auto rts = roots_in(pl.u, *K);
        check(!rts.empty(), "place polynomial has no root");
        const elem x0 = rts.front();
        if (is_p1()) return Point{false, x0, 0};
        if (!pl.full) return Point{false, x0, embed(pl.v, *K).eval(x0)};
        auto ys = solve_y(*K, embed(f_, *K).eval(x0), embed(h_, *K).eval(x0));
        check(!ys.empty(), "fibre has no point");
        return Point{false, x0, ys.front()};
    }

    /// Orbit of the representative of a place (degree many points in F_{q^degree}).
    std::vector<Point> orbit_points(const Place &pl) const
    {
        auto K = over(static_cast<unsigned>(pl.degree));
        std::vector<Point> out{pl.rep};
        for (int i = 1; i < pl.degree; ++i) out.push_back(frobenius(*K, out.back()));
        return out;
    }

    Place infinity_place() const
    {
        check(odd_model_, "no unique place at infinity");
        Place pl;
        pl.inf = true;
        pl.rep = Point{true, 0, 0};
        return pl;
    }

    /// All degree-n places, sorted.
    const std::vector<Place> &places_of_degree(unsigned n) const
    {
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = cache_->places.find(n);
            if (it != cache_->places.end()) return it->second;
        }
        std::vector<Place> out = compute_places(n);
        std::lock_guard<std::mutex> lock(cache_->mu);
        return cache_->places.emplace(n, std::move(out)).first->second;
    }

    /// Same curve over F_{q^n}.
    CurvePtr base_change(unsigned n) const
    {
        auto K = over(n);
        return std::make_shared<const Curve>(kind_, K, embed(f_, *K), embed(h_, *K));
    }

private:
    std::vector<Place> compute_places(unsigned n) const
    {
        std::vector<Place> out;
        auto K = over(n);
        if (is_p1()) {
            for (auto &[u, x0] : monic_irreducibles_with_roots(*F_, n)) {
                Place pl;
                pl.degree = static_cast<int>(n);
                pl.u = u;
                pl.rep = Point{false, x0, 0};
                out.push_back(std::move(pl));
            }
            if (n == 1) out.push_back(infinity_place());
            return out;
        }
        const Poly fK = embed(f_, *K), hK = embed(h_, *K);
        for (auto &[u, x0] : monic_irreducibles_with_roots(*F_, n)) {
            for (elem y : solve_y(*K, fK.eval(x0), hK.eval(x0))) out.push_back(place_of_point(*K, Point{false, x0, y}));
        }
        if (n % 2 == 0) {
            auto Kh = over(n / 2);
            const Poly fh = embed(f_, *Kh), hh = embed(h_, *Kh);
            for (auto &[u, x0] : monic_irreducibles_with_roots(*F_, n / 2)) {
                if (!solve_y(*Kh, fh.eval(x0), hh.eval(x0)).empty()) continue;
                Place pl;
                pl.degree = static_cast<int>(n);
                pl.u = u;
                pl.full = true;
                pl.rep = representative(pl);
                out.push_back(std::move(pl));
            }
        }
        if (odd_model_) {
            if (n == 1) out.push_back(infinity_place());
        } else if (n <= 2) {
            auto rational = infinity_points(*F_);
            if (n == 1) {
                for (auto &P : rational) out.push_back(place_of_point(*F_, P));
            } else if (rational.empty()) {
                Place pl;
                pl.degree = 2;
                pl.inf = true;
                pl.full = true;
                pl.rep = representative(pl);
                out.push_back(std::move(pl));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string make_descriptor() const
    {
        const std::string qs = "q=" + std::to_string(F_->q());
        switch (kind_) {
        case CurveKind::ProjectiveLine: return "p1:" + qs;
        case CurveKind::Elliptic:
            if (F_->p() == 2) return "ell2:" + qs + ";f=" + f_.str();
            if (f_.degree() == 3 && f_.lc() == 1 && f_[2] == 0) {
                return "ell:" + qs + ";a=" + std::to_string(f_[1]) + ";b=" + std::to_string(f_[0]);
            }
            return "hyp:" + qs + ";f=" + f_.str();
        case CurveKind::Hyperelliptic: return "hyp:" + qs + ";f=" + f_.str();
        }
        return "";
    }

    struct Cache {
        std::mutex mu;
        std::map<unsigned, std::vector<Place>> places;
    };

    CurveKind kind_;
    FieldPtr F_;
    Poly f_, h_;
    int genus_ = 0;
    bool odd_model_ = true;
    std::string descriptor_;
    std::shared_ptr<Cache> cache_;
};

inline CurvePtr make_p1(FieldPtr F)
{
    const Field *raw = F.get();
    return std::make_shared<const Curve>(CurveKind::ProjectiveLine, std::move(F), Poly(raw), Poly(raw));
}

/// y^2 = f (odd characteristic) with f squarefree of positive degree.
inline CurvePtr make_hyperelliptic(FieldPtr F, Poly f)
{
    if (F->p() == 2) throw Error(ErrorKind::UnsupportedCurve, "hyperelliptic models need odd characteristic");
    if (f.degree() < 1) throw Error(ErrorKind::UnsupportedCurve, "f must have positive degree");
    if (gcd(f, f.derivative()).degree() != 0) throw Error(ErrorKind::UnsupportedCurve, "f is not squarefree: " + f.str());
    const Field *raw = F.get();
    const CurveKind kind = f.degree() == 3 ? CurveKind::Elliptic : CurveKind::Hyperelliptic;
    return std::make_shared<const Curve>(kind, std::move(F), std::move(f), Poly(raw));
}

/// y^2 = x^3 + a x + b.
inline CurvePtr make_short_weierstrass(FieldPtr F, elem a, elem b)
{
    if (F->p() == 2) throw Error(ErrorKind::UnsupportedCurve, "short Weierstrass form needs odd characteristic");
    Poly f(F.get(), {b, a, 0, 1});
    if (gcd(f, f.derivative()).degree() != 0) throw Error(ErrorKind::UnsupportedCurve, "singular curve");
    const Field *raw = F.get();
    return std::make_shared<const Curve>(CurveKind::Elliptic, std::move(F), std::move(f), Poly(raw));
}

/// y^2 + y = f with f a monic cubic, characteristic 2.
inline CurvePtr make_char2_elliptic(FieldPtr F, Poly f)
{
    if (F->p() != 2) throw Error(ErrorKind::UnsupportedCurve, "ell2 needs characteristic 2");
    if (f.degree() != 3 || !f.is_monic()) throw Error(ErrorKind::UnsupportedCurve, "ell2 needs a monic cubic");
    const Field *raw = F.get();
    return std::make_shared<const Curve>(CurveKind::Elliptic, std::move(F), std::move(f), Poly::constant(raw, 1));
}

namespace detail {

inline std::int64_t parse_int(const std::string &s, const std::string &what)
{
    if (s.empty()) throw Error(ErrorKind::Parse, "missing value for " + what);
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i >= s.size()) throw Error(ErrorKind::Parse, "bad integer for " + what + ": '" + s + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw Error(ErrorKind::Parse, "bad integer for " + what + ": '" + s + "'");
        v = v * 10 + (s[i] - '0');
        if (v > (std::int64_t(1) << 40)) throw Error(ErrorKind::Parse, "integer too large for " + what);
    }
    return neg ? -v : v;
}

} // namespace detail

/// Parses "p1:q=<q>", "ell:q=<q>;a=<int>;b=<int>", "ell2:q=<2^k>;f=<poly>", "hyp:q=<q>;f=<poly>".
inline CurvePtr parse_curve(const std::string &text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "curve descriptor needs '<kind>:': '" + text + "'");
    const std::string kind = text.substr(0, colon);
    std::vector<std::pair<std::string, std::string>> kv;
    std::size_t pos = colon + 1;
    while (pos <= text.size()) {
        auto semi = text.find(';', pos);
        if (semi == std::string::npos) semi = text.size();
        const std::string item = text.substr(pos, semi - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "expected key=value in '" + item + "'");
        kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        pos = semi + 1;
    }
    std::vector<std::string> expected;
    if (kind == "p1") expected = {"q"};
    else if (kind == "ell") expected = {"q", "a", "b"};
    else if (kind == "ell2" || kind == "hyp") expected = {"q", "f"};
    else throw Error(ErrorKind::Parse, "unknown curve kind '" + kind + "'");
    if (kv.size() != expected.size()) throw Error(ErrorKind::Parse, "curve '" + kind + "' expects keys in order q" + std::string(kind == "ell" ? ";a;b" : kind == "p1" ? "" : ";f"));
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (kv[i].first != expected[i]) throw Error(ErrorKind::Parse, "unexpected key '" + kv[i].first + "' (expected '" + expected[i] + "')");
    }
    const std::int64_t q = detail::parse_int(kv[0].second, "q");
    if (q < 2) throw Error(ErrorKind::Parse, "q must be a prime power");
    FieldPtr F;
    try {
        F = make_field_q(static_cast<std::uint64_t>(q));
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::NotPrime) throw Error(ErrorKind::Parse, e.what());
        throw;
    }
    if (kind == "p1") return make_p1(F);
    if (kind == "ell") {
        const elem a = element_from_literal(*F, detail::parse_int(kv[1].second, "a"));
        const elem b = element_from_literal(*F, detail::parse_int(kv[2].second, "b"));
        return make_short_weierstrass(F, a, b);
    }
    Poly f = parse_poly(F.get(), kv[1].second);
    if (kind == "ell2") return make_char2_elliptic(F, f);
    return make_hyperelliptic(F, f);
}

} // namespace tracelab
