#pragma once

// Etale double covers of an elliptic curve E: y^2 = f(x) (odd characteristic)
// realized by a 2-isogeny E' -> E. With a rational 2-torsion point (x0, 0) and
// f(x + x0) = x(x^2 + A x + B):
//   E': Y^2 = X (X^2 - 2A X + A^2 - 4B)
//   pi(X, Y) = (Y^2 / (4X^2) + x0, Y (A^2 - 4B - X^2) / (8X^2))
// The deck involution is translation by T' = (0, 0).

#include <optional>
#include <vector>

#include "picard.hpp"

namespace tracelab {

class EtaleDoubleCover
{
public:
    EtaleDoubleCover(CurvePtr base, elem x0) : base_(std::move(base)), x0_(x0)
    {
        const Field &F = base_->field();
        const Poly shifted = compose_shift(base_->f(), x0);
        check(shifted[0] == 0, "x0 is not a root of f");
        A_ = shifted[2];
        B_ = shifted[1];
        c_ = F.sub(F.mul(A_, A_), F.mul(4 % F.p(), B_));
        const Poly fc(&F, {0, c_, F.neg(F.add(A_, A_)), 1});
        cover_ = make_hyperelliptic(base_->field_ptr(), fc);
    }

    const Curve &base() const noexcept { return *base_; }
    const Curve &cover() const noexcept { return *cover_; }
    CurvePtr base_ptr() const noexcept { return base_; }
    CurvePtr cover_ptr() const noexcept { return cover_; }
    elem x0() const noexcept { return x0_; }

    /// pi on points with coordinates in K.
    Point map(const Field &K, const Point &Q) const
    {
        if (Q.inf || Q.x == 0) return Point{true, 0, 0};
        const elem c = up(K, c_), x0 = up(K, x0_);
        const elem X2 = K.mul(Q.x, Q.x);
        const elem x = K.add(K.div(K.mul(Q.y, Q.y), K.mul(4 % K.p(), X2)), x0);
        const elem y = K.div(K.mul(Q.y, K.sub(c, X2)), K.mul(8 % K.p(), X2));
        return Point{false, x, y};
    }

    /// Points of E'(K) over P in E(K).
    std::vector<Point> preimages(const Field &K, const Point &P) const
    {
        if (P.inf) return {Point{true, 0, 0}, Point{false, 0, 0}};
        const elem A = up(K, A_), c = up(K, c_), x0 = up(K, x0_);
        const elem s = K.sub(P.x, x0);
        // X^2 - (2A + 4s) X + c = 0, then Y = +-2X sqrt(s)
        const elem b = K.neg(K.add(K.add(A, A), K.mul(4 % K.p(), s)));
        const Poly quad(&K, {c, b, 1});
        std::vector<Point> out;
        if (!K.is_square(s)) return out;
        const elem r = *K.sqrt(s);
        for (elem X : roots_in(quad, K)) {
            if (X == 0) continue;
            for (elem sign : {elem(1), K.neg(1)}) {
                const Point Q{false, X, K.mul(sign, K.mul(K.add(X, X), r))};
                if (cover_->on_curve(K, Q) && map(K, Q) == P) out.push_back(Q);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Q + T' on E'.
    Point involution(const Field &K, const Point &Q) const
    {
        if (Q.inf) return Point{false, 0, 0};
        if (Q.x == 0) return Point{true, 0, 0};
        const elem c = up(K, c_);
        return Point{false, K.div(c, Q.x), K.neg(K.div(K.mul(c, Q.y), K.mul(Q.x, Q.x)))};
    }

    /// 0 when the place splits in the cover, 1 when it is inert.
    int splitting(const Place &x) const
    {
        auto K = base_->over(static_cast<unsigned>(x.degree));
        return preimages(*K, x.rep).empty() ? 1 : 0;
    }

    /// Places of E' over a place of E.
    std::vector<Place> places_over(const Place &x) const
    {
        const unsigned e = static_cast<unsigned>(x.degree);
        auto K = base_->over(e);
        auto pre = preimages(*K, x.rep);
        std::vector<Place> out;
        if (!pre.empty()) {
            for (auto &Q : pre) out.push_back(cover_->place_of_point(*K, Q));
        } else {
            auto K2 = base_->over(2 * e);
            const Point P2{x.rep.inf, embed(x.rep.x, *K, *K2), embed(x.rep.y, *K, *K2)};
            auto pre2 = preimages(*K2, P2);
            check(!pre2.empty(), "inert place has no preimage over the quadratic extension");
            out.push_back(cover_->place_of_point(*K2, pre2.front()));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    Place image_place(const Place &y) const
    {
        auto K = cover_->over(static_cast<unsigned>(y.degree));
        return base_->place_of_point(*K, map(*K, y.rep));
    }

    Divisor pushforward(const Divisor &D) const
    {
        Divisor out;
        for (auto &[y, n] : D.terms()) {
            const Place x = image_place(y);
            out.add(x, n * (y.degree / x.degree));
        }
        return out;
    }

    Divisor pullback(const Divisor &D) const
    {
        Divisor out;
        for (auto &[x, n] : D.terms()) {
            for (auto &y : places_over(x)) out.add(y, n);
        }
        return out;
    }

    Place involution_place(const Place &y) const
    {
        auto K = cover_->over(static_cast<unsigned>(y.degree));
        return cover_->place_of_point(*K, involution(*K, y.rep));
    }

    Divisor involution(const Divisor &D) const
    {
        Divisor out;
        for (auto &[y, n] : D.terms()) out.add(involution_place(y), n);
        return out;
    }

private:
    static Poly compose_shift(const Poly &f, elem x0)
    {
        const Field *F = f.field();
        Poly r(F), xs(F, {x0, 1});
        for (std::size_t i = f.coeffs().size(); i-- > 0;) r = r * xs + Poly::constant(F, f[i]);
        return r;
    }

    elem up(const Field &K, elem a) const { return embed(a, base_->field(), K); }

    CurvePtr base_;
    CurvePtr cover_;
    elem x0_;
    elem A_ = 0, B_ = 0, c_ = 0;
};

/// Cover by the 2-isogeny at the least rational 2-torsion point.
inline std::shared_ptr<const EtaleDoubleCover> make_etale_double_cover(CurvePtr E)
{
    if (E->kind() != CurveKind::Elliptic || !E->h().is_zero() || E->field().p() == 2) {
        throw Error(ErrorKind::UnsupportedCurve, "double covers need an odd-characteristic elliptic curve y^2 = f(x)");
    }
    if (!E->f().is_monic()) throw Error(ErrorKind::UnsupportedCurve, "double covers need a monic cubic");
    auto r = roots_in(E->f(), E->field());
    if (r.empty()) throw Error(ErrorKind::UnsupportedCurve, "no rational 2-torsion point");
    return std::make_shared<const EtaleDoubleCover>(std::move(E), r.front());
}

/// Sum of two characters of the same Picard group.
inline TorusCharacter character_product(const TorusCharacter &a, const TorusCharacter &b)
{
    TorusCharacter r;
    r.order = std::lcm(a.order, b.order);
    const int sa = r.order / a.order, sb = r.order / b.order;
    r.weights.resize(std::max(a.weights.size(), b.weights.size()), 0);
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
        const int wa = i < a.weights.size() ? a.weights[i] * sa : 0, wb = i < b.weights.size() ? b.weights[i] * sb : 0;
        r.weights[i] = (wa + wb) % r.order;
    }
    r.degree_value = (a.degree_value * sa + b.degree_value * sb) % r.order;
    r.label = a.label + "*" + b.label;
    return r;
}

/// The quadratic character of Pic(E) cut out by the cover: trivial exactly on
/// the image of the norm from Pic(E').
inline TorusCharacter cover_character(const EtaleDoubleCover &C, const PicardGroup &base, const PicardGroup &cover)
{
    std::vector<char> image(base.size(), 0);
    for (int i = 0; i < static_cast<int>(cover.size()); ++i) {
        Divisor D;
        const Mumford &m = cover.elements()[static_cast<std::size_t>(i)];
        if (!m.is_zero()) {
            D.add(cover.curve().place_of_point(cover.curve().field(), Point{false, (m.u.field()->neg(m.u[0])), m.v[0]}), 1);
            D.add(cover.curve().infinity_place(), -1);
        }
        image[static_cast<std::size_t>(base.class_of(C.pushforward(D)))] = 1;
    }
    std::size_t n_image = 0;
    for (auto c : image) n_image += c;
    check(2 * n_image == base.size(), "norm image does not have index 2");
    for (auto &chi : characters(base, 1)) {
        if (chi.character_order() != 2) continue;
        bool match = true;
        for (int i = 0; i < static_cast<int>(base.size()) && match; ++i) match = (chi.value(base, i, 0) == 0) == (image[static_cast<std::size_t>(i)] != 0);
        if (match) {
            TorusCharacter r = chi;
            r.label = "cover";
            return r;
        }
    }
    throw Error(ErrorKind::Internal, "no quadratic character matches the norm image");
}

} // namespace tracelab
