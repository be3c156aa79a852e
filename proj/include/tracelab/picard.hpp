#pragma once

// Degree-0 divisor classes on P^1, elliptic curves and odd-degree genus-2
// curves, with Mumford representatives relative to the point at infinity and
// Cantor composition for y^2 + h(x) y = f(x).

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "divisor.hpp"
#include "zeta.hpp"

namespace tracelab {

/// Reduced divisor u(x) = 0, y = v(x): the class of (sum of its points) - deg(u)*inf.
struct Mumford {
    Poly u;
    Poly v;

    friend bool operator==(const Mumford &a, const Mumford &b) { return a.u == b.u && a.v == b.v; }
    friend bool operator<(const Mumford &a, const Mumford &b)
    {
        if (a.u == b.u) return a.v < b.v;
        return a.u < b.u;
    }
    bool is_zero() const { return u.degree() == 0; }
    std::string str() const { return "(" + u.str() + ", " + v.str() + ")"; }
};

class Jacobian
{
public:
    explicit Jacobian(const Curve &X) : F_(&X.field()), g_(X.genus()), f_(X.is_p1() ? Poly(&X.field()) : X.f()), h_(X.is_p1() ? Poly(&X.field()) : X.h()), p1_(X.is_p1())
    {
        if (!X.is_p1() && !X.odd_model()) throw Error(ErrorKind::UnsupportedCurve, "Picard arithmetic needs a single rational point at infinity");
        if (g_ > 2) throw Error(ErrorKind::UnsupportedCurve, "Picard arithmetic supports genus <= 2");
    }

    int genus() const noexcept { return g_; }
    Mumford zero() const { return {Poly::constant(F_, 1), Poly(F_)}; }

    bool is_valid(const Mumford &D) const
    {
        if (!D.u.is_monic() || D.u.degree() > g_ || D.v.degree() >= D.u.degree()) return false;
        return ((D.v * D.v + h_ * D.v - f_) % D.u).is_zero();
    }

    Mumford reduce(Mumford D) const
    {
        if (p1_) return zero();
        D.v = D.v % D.u;
        while (D.u.degree() > g_) {
            Poly nu = (f_ - h_ * D.v - D.v * D.v) / D.u;
            Poly nv = (-(h_ + D.v)) % nu;
            D.u = std::move(nu);
            D.v = std::move(nv);
        }
        D.u = D.u.monic();
        D.v = D.v % D.u;
        return D;
    }

    Mumford add(const Mumford &a, const Mumford &b) const
    {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        auto [d1, e1, e2] = xgcd(a.u, b.u);
        auto [d, c1, c2] = xgcd(d1, a.v + b.v + h_);
        const Poly s1 = c1 * e1, s2 = c1 * e2, &s3 = c2;
        Poly u = (a.u * b.u) / (d * d);
        Poly v = ((s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f_)) / d) % u;
        return reduce({std::move(u), std::move(v)});
    }

    Mumford neg(const Mumford &a) const
    {
        if (a.is_zero()) return a;
        return {a.u, (-(h_ + a.v)) % a.u};
    }

    Mumford mul(Mumford a, long k) const
    {
        if (k < 0) {
            a = neg(a);
            k = -k;
        }
        Mumford r = zero();
        while (k) {
            if (k & 1) r = add(r, a);
            k >>= 1;
            if (k) a = add(a, a);
        }
        return r;
    }

    /// Class of P - deg(P) * inf.
    Mumford place_class(const Place &P) const
    {
        if (p1_ || P.inf || P.full) return zero();
        return reduce({P.u, P.v});
    }

    /// All reduced representatives, by direct search.
    std::vector<Mumford> enumerate() const
    {
        std::vector<Mumford> out{zero()};
        if (p1_) return out;
        const std::uint64_t q = F_->q();
        for (int k = 1; k <= g_; ++k) {
            std::uint64_t total = 1;
            for (int i = 0; i < k; ++i) total *= q;
            require_within_cap(total * total, "Mumford representatives");
            for (std::uint64_t ui = 0; ui < total; ++ui) {
                std::vector<elem> uc(static_cast<std::size_t>(k) + 1, 0);
                std::uint64_t t = ui;
                for (int i = 0; i < k; ++i, t /= q) uc[static_cast<std::size_t>(i)] = static_cast<elem>(t % q);
                uc[static_cast<std::size_t>(k)] = 1;
                const Poly u(F_, uc);
                const Poly target = (f_ % u);
                const Poly hu = h_ % u;
                for (std::uint64_t vi = 0; vi < total; ++vi) {
                    std::vector<elem> vc(static_cast<std::size_t>(k), 0);
                    std::uint64_t s = vi;
                    for (int i = 0; i < k; ++i, s /= q) vc[static_cast<std::size_t>(i)] = static_cast<elem>(s % q);
                    const Poly v(F_, vc);
                    if (((v * v + hu * v - target) % u).is_zero()) out.push_back({u, v});
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    const Field *F_;
    int g_;
    Poly f_, h_;
    bool p1_;
};

namespace detail {

// Smith normal form of an integer matrix; returns the diagonal and the column
// transform V (relations R satisfy rowspace(R V) = rowspace(diag)).
inline std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> A, std::vector<std::vector<std::int64_t>> &V)
{
    const std::size_t n = A.empty() ? 0 : A[0].size(), m = A.size();
    V.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) V[i][i] = 1;
    auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t k) { // col dst -= k col src
        for (auto &row : A) row[dst] -= k * row[src];
        for (auto &row : V) row[dst] -= k * row[src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto &row : A) std::swap(row[a], row[b]);
        for (auto &row : V) std::swap(row[a], row[b]);
    };
    std::vector<std::int64_t> diag;
    for (std::size_t t = 0; t < std::min(n, m); ++t) {
        while (true) {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (A[i][j] && (bi == m || std::llabs(A[i][j]) < std::llabs(A[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == m) {
                diag.resize(std::min(n, m), 0);
                return diag;
            }
            std::swap(A[t], A[bi]);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                const std::int64_t k = A[i][t] / A[t][t];
                for (std::size_t j = t; j < n; ++j) A[i][j] -= k * A[t][j];
                clean = clean && A[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                col_op(j, t, A[t][j] / A[t][t]);
                clean = clean && A[t][j] == 0;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (A[i][j] % A[t][t]) {
                        for (std::size_t c = t; c < n; ++c) A[t][c] += A[i][c];
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        diag.push_back(std::llabs(A[t][t]));
    }
    return diag;
}

} // namespace detail

/// Pic^0(X)(F_q) with an explicit isomorphism to Z/n_1 x ... x Z/n_r (n_i | n_{i+1}).
/// Pic(X) = Pic^0 x Z is split by the rational point at infinity.
class PicardGroup
{
public:
    explicit PicardGroup(CurvePtr X) : X_(std::move(X)), jac_(*X_)
    {
        elems_ = jac_.enumerate();
        for (std::size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], static_cast<int>(i));
        check(elems_[0].is_zero(), "zero class must come first");
        decompose();
    }

    const Curve &curve() const noexcept { return *X_; }
    CurvePtr curve_ptr() const noexcept { return X_; }
    const Jacobian &jacobian() const noexcept { return jac_; }
    std::size_t size() const noexcept { return elems_.size(); }
    const std::vector<Mumford> &elements() const noexcept { return elems_; }
    const std::vector<int> &invariants() const noexcept { return invariants_; }
    int exponent() const noexcept { return invariants_.empty() ? 1 : invariants_.back(); }
    const std::vector<int> &coordinates(int idx) const { return coords_[static_cast<std::size_t>(idx)]; }
    Place base_place() const { return X_->infinity_place(); }

    std::string structure() const
    {
        if (invariants_.empty()) return "0";
        std::string s;
        for (auto n : invariants_) s += (s.empty() ? "" : " x ") + std::string("Z/") + std::to_string(n);
        return s;
    }

    int index_of(const Mumford &D) const
    {
        auto it = index_.find(D);
        check(it != index_.end(), "class not found: " + D.str());
        return it->second;
    }

    int add(int a, int b) const { return index_of(jac_.add(elems_[static_cast<std::size_t>(a)], elems_[static_cast<std::size_t>(b)])); }
    int neg(int a) const { return index_of(jac_.neg(elems_[static_cast<std::size_t>(a)])); }

    Mumford place_class(const Place &P) const
    {
        std::lock_guard<std::mutex> lock(*mu_);
        auto it = place_cache_.find(P);
        if (it != place_cache_.end()) return it->second;
        Mumford c = jac_.place_class(P);
        place_cache_.emplace(P, c);
        return c;
    }

    /// Index of the class of D - deg(D) * inf.
    int class_of(const Divisor &D) const
    {
        Mumford acc = jac_.zero();
        for (auto &[P, n] : D.terms()) acc = jac_.add(acc, jac_.mul(place_class(P), n));
        return index_of(acc);
    }

    int class_of_place(const Place &P) const { return index_of(place_class(P)); }

private:
    void decompose()
    {
        const std::size_t n = elems_.size();
        std::vector<std::vector<std::int64_t>> span_coords(n);
        std::vector<char> in_span(n, 0);
        std::vector<int> members{0};
        in_span[0] = 1;
        std::vector<std::vector<std::int64_t>> relations;
        std::size_t k = 0;
        while (members.size() < n) {
            int g = 0;
            while (in_span[static_cast<std::size_t>(g)]) ++g;
            // smallest m with m*g in the current span
            std::int64_t m = 1;
            int cur = g;
            while (!in_span[static_cast<std::size_t>(cur)]) {
                cur = add(cur, g);
                ++m;
            }
            std::vector<std::int64_t> rel = span_coords[static_cast<std::size_t>(cur)];
            for (auto &c : rel) c = -c;
            rel.resize(k + 1, 0);
            rel[k] = m;
            for (auto &r : relations) r.push_back(0);
            relations.push_back(rel);
            for (int s : members) span_coords[static_cast<std::size_t>(s)].resize(k + 1, 0);
            const std::vector<int> base = members;
            int step = 0; // j * g
            for (std::int64_t j = 1; j < m; ++j) {
                step = add(step, g);
                for (int s : base) {
                    const int e = add(s, step);
                    check(!in_span[static_cast<std::size_t>(e)], "span enumeration collided");
                    in_span[static_cast<std::size_t>(e)] = 1;
                    span_coords[static_cast<std::size_t>(e)] = span_coords[static_cast<std::size_t>(s)];
                    span_coords[static_cast<std::size_t>(e)][k] = j;
                    members.push_back(e);
                }
            }
            ++k;
        }
        std::vector<std::vector<std::int64_t>> V;
        const auto diag = detail::smith_diagonal(relations, V);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            if (diag[i] > 1) {
                keep.push_back(i);
                invariants_.push_back(static_cast<int>(diag[i]));
            }
        }
        coords_.assign(n, std::vector<int>(keep.size(), 0));
        for (std::size_t e = 0; e < n; ++e) {
            const auto &c = span_coords[e];
            for (std::size_t t = 0; t < keep.size(); ++t) {
                std::int64_t s = 0;
                for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * V[i][keep[t]];
                const std::int64_t d = diag[keep[t]];
                coords_[e][t] = static_cast<int>(((s % d) + d) % d);
            }
        }
        std::int64_t order = 1;
        for (auto d : invariants_) order *= d;
        check(order == static_cast<std::int64_t>(n), "invariant factors do not multiply to the group order");
    }

    CurvePtr X_;
    Jacobian jac_;
    std::vector<Mumford> elems_;
    std::map<Mumford, int> index_;
    std::vector<int> invariants_;
    std::vector<std::vector<int>> coords_;
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
    mutable std::map<Place, Mumford> place_cache_;
};

using PicardPtr = std::shared_ptr<const PicardGroup>;

inline PicardPtr picard_group(CurvePtr X)
{
    auto G = std::make_shared<const PicardGroup>(X);
    const auto z = zeta_data(*X);
    if (static_cast<std::int64_t>(G->size()) != z.at_one()) {
        throw Error(ErrorKind::Internal, "Picard order " + std::to_string(G->size()) + " differs from P(1) = " + std::to_string(z.at_one()));
    }
    return G;
}

/// A character Pic(X) -> Z/N: weights on the invariant-factor generators of
/// Pic^0 and a value on the class of the base place.
struct TorusCharacter {
    int order = 1; // N
    std::vector<int> weights;
    int degree_value = 0;
    int id = 0;
    std::string label;

    bool geometrically_trivial() const
    {
        for (auto w : weights) {
            if (w % order) return false;
        }
        return true;
    }

    bool trivial() const { return geometrically_trivial() && degree_value % order == 0; }

    int value(const PicardGroup &G, int class_index, long degree) const
    {
        const auto &c = G.coordinates(class_index);
        long long s = static_cast<long long>(degree) * degree_value;
        for (std::size_t i = 0; i < weights.size(); ++i) s += static_cast<long long>(weights[i]) * c[i];
        return static_cast<int>(((s % order) + order) % order);
    }

    int value(const PicardGroup &G, const Divisor &D) const { return value(G, G.class_of(D), D.degree()); }
    int value(const PicardGroup &G, const Place &P) const { return value(G, G.class_of_place(P), P.degree); }

    TorusCharacter power(long m) const
    {
        TorusCharacter r = *this;
        for (auto &w : r.weights) w = static_cast<int>(((static_cast<long long>(w) * m) % order + order) % order);
        r.degree_value = static_cast<int>(((static_cast<long long>(degree_value) * m) % order + order) % order);
        r.label = label + "^" + std::to_string(m);
        return r;
    }

    /// Order of the character as an element of the dual group.
    int character_order() const
    {
        int g = order;
        for (auto w : weights) g = std::gcd(g, w);
        g = std::gcd(g, degree_value);
        return order / g;
    }
};

inline TorusCharacter trivial_character(const PicardGroup &G)
{
    TorusCharacter t;
    t.weights.assign(G.invariants().size(), 0);
    t.label = "trivial";
    return t;
}

/// All characters of Pic^0 crossed with the degree values in Z/degree_order.
inline std::vector<TorusCharacter> characters(const PicardGroup &G, int degree_order = 1)
{
    check(degree_order >= 1, "degree order must be positive");
    const int N = std::lcm(G.exponent(), degree_order);
    const auto &inv = G.invariants();
    std::vector<TorusCharacter> out;
    std::vector<int> k(inv.size(), 0);
    while (true) {
        for (int t = 0; t < degree_order; ++t) {
            TorusCharacter c;
            c.order = N;
            for (std::size_t i = 0; i < inv.size(); ++i) c.weights.push_back(k[i] * (N / inv[i]));
            c.degree_value = t * (N / degree_order);
            c.id = static_cast<int>(out.size());
            std::string lab = "k=(";
            for (std::size_t i = 0; i < k.size(); ++i) lab += (i ? "," : "") + std::to_string(k[i]);
            c.label = lab + ");t=" + std::to_string(t) + "/" + std::to_string(degree_order);
            out.push_back(std::move(c));
        }
        std::size_t i = inv.size();
        while (i > 0) {
            --i;
            if (++k[i] < inv[i]) break;
            k[i] = 0;
            if (i == 0) return out;
        }
        if (inv.empty()) return out;
    }
}

} // namespace tracelab
