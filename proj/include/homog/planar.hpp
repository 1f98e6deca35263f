#pragma once

// Two-variable jets truncated by total degree and planar germs fixing 0.

#include "homog/linmaps.hpp"
#include "homog/shears.hpp"

#include <array>
#include <vector>

namespace homog {

/// sum c_{ij} x^i y^j over i + j <= N.
template <JetScalar T> class BiJet {
public:
    explicit BiJet(int order) : order_(order), c_(size_for(order), T(0)) {}

    static BiJet x(int order) { return monomial(T(1), 1, 0, order); }
    static BiJet y(int order) { return monomial(T(1), 0, 1, order); }
    static BiJet constant(const T& v, int order) { return monomial(v, 0, 0, order); }

    static BiJet monomial(const T& v, int i, int j, int order)
    {
        BiJet b(order);
        if (i >= 0 && j >= 0 && i + j <= order) b.at(i, j) = v;
        return b;
    }

    int order() const noexcept { return order_; }

    const T& operator()(int i, int j) const { return c_[index(i, j)]; }
    T coeff(int i, int j) const { return i >= 0 && j >= 0 && i + j <= order_ ? c_[index(i, j)] : T(0); }
    T& at(int i, int j) { return c_[index(i, j)]; }

    BiJet truncated(int order) const
    {
        if (order > order_) throw DomainError("cannot raise the truncation order of a two-variable jet");
        BiJet b(order);
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order; ++j) b.at(i, j) = (*this)(i, j);
        return b;
    }

    /// Same coefficients at a higher order, padded with zeros (callers must know they are exact).
    BiJet padded(int order) const
    {
        if (order < order_) return truncated(order);
        BiJet b(order);
        for (int i = 0; i <= order_; ++i)
            for (int j = 0; i + j <= order_; ++j) b.at(i, j) = (*this)(i, j);
        return b;
    }

    bool is_zero_jet() const
    {
        for (const T& v : c_)
            if (!is_zero(v)) return false;
        return true;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const T& v : c_) m = std::max(m, magnitude(v));
        return m;
    }

    friend bool operator==(const BiJet& a, const BiJet& b) { return a.order_ == b.order_ && a.c_ == b.c_; }

    friend BiJet operator+(const BiJet& a, const BiJet& b)
    {
        const int n = std::min(a.order_, b.order_);
        BiJet r(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) r.at(i, j) = a(i, j) + b(i, j);
        return r;
    }

    BiJet operator-() const
    {
        BiJet r = *this;
        for (T& v : r.c_) v = -v;
        return r;
    }

    friend BiJet operator-(const BiJet& a, const BiJet& b) { return a + (-b); }

    friend BiJet operator*(const T& s, const BiJet& a)
    {
        BiJet r = a;
        for (T& v : r.c_) v = s * v;
        return r;
    }

    friend BiJet operator*(const BiJet& a, const BiJet& b)
    {
        const int n = std::min(a.order_, b.order_);
        BiJet r(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                const T& av = a(i, j);
                if (av == T(0)) continue;
                for (int k = 0; i + j + k <= n; ++k)
                    for (int l = 0; i + j + k + l <= n; ++l) r.at(i + k, j + l) += av * b(k, l);
            }
        return r;
    }

    template <typename U> U evaluate(const U& x, const U& y) const
    {
        U acc(0);
        for (int i = order_; i >= 0; --i) {
            U row(0);
            for (int j = order_ - i; j >= 0; --j) row = row * y + U(cast<U>((*this)(i, j)));
            acc = acc * x + row;
        }
        return acc;
    }

private:
    static std::size_t size_for(int order)
    {
        if (order < 0) throw DomainError("negative truncation order");
        return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
    }

    // rows of constant i, each of length N + 1 - i
    std::size_t index(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > order_) throw DomainError("two-variable jet index out of range");
        return static_cast<std::size_t>(i * (2 * order_ + 3 - i) / 2 + j);
    }

    template <typename U> static U cast(const T& v)
    {
        if constexpr (std::same_as<T, Rational> && !std::same_as<U, Rational>) return U(v.get_d());
        else return U(v);
    }

    int order_;
    std::vector<T> c_;
};

/// Partial derivatives; the order drops by one.
template <JetScalar T> BiJet<T> d_dx(const BiJet<T>& a)
{
    if (a.order() < 1) throw DomainError("derivative of an order-0 two-variable jet");
    BiJet<T> r(a.order() - 1);
    for (int i = 1; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) r.at(i - 1, j) = scalar_traits<T>::from_int(i) * a(i, j);
    return r;
}

template <JetScalar T> BiJet<T> d_dy(const BiJet<T>& a)
{
    if (a.order() < 1) throw DomainError("derivative of an order-0 two-variable jet");
    BiJet<T> r(a.order() - 1);
    for (int i = 0; i < a.order(); ++i)
        for (int j = 1; i + j <= a.order(); ++j) r.at(i, j - 1) = scalar_traits<T>::from_int(j) * a(i, j);
    return r;
}

/// outer(u, v) with u, v having zero constant terms; Horner in the first variable.
template <JetScalar T> BiJet<T> compose(const BiJet<T>& outer, const BiJet<T>& u, const BiJet<T>& v)
{
    if (!is_zero(u(0, 0)) || !is_zero(v(0, 0))) throw DomainError("inner map must fix 0");
    const int n = std::min({outer.order(), u.order(), v.order()});
    std::vector<BiJet<T>> vp;
    vp.push_back(BiJet<T>::constant(T(1), n));
    const BiJet<T> vn = v.truncated(n), un = u.truncated(n);
    for (int j = 1; j <= n; ++j) vp.push_back(vp.back() * vn);
    BiJet<T> acc(n);
    for (int i = n; i >= 0; --i) {
        if (i < n) acc = acc * un;
        for (int j = 0; i + j <= n; ++j) {
            const T& c = outer(i, j);
            if (c == T(0)) continue;
            acc = acc + c * vp[j];
        }
    }
    return acc;
}

/// (fx, fy) with both components vanishing at 0.
template <JetScalar T> struct PlanarMap {
    BiJet<T> fx;
    BiJet<T> fy;

    PlanarMap(BiJet<T> x, BiJet<T> y) : fx(std::move(x)), fy(std::move(y))
    {
        if (!is_zero(fx(0, 0)) || !is_zero(fy(0, 0))) throw DomainError("planar map components must vanish at 0");
        if (fx.order() != fy.order()) {
            const int n = std::min(fx.order(), fy.order());
            fx = fx.truncated(n);
            fy = fy.truncated(n);
        }
    }

    static PlanarMap identity(int order) { return PlanarMap(BiJet<T>::x(order), BiJet<T>::y(order)); }

    static PlanarMap linear(const LinMap2<T>& a, int order)
    {
        return PlanarMap(a.m[0][0] * BiJet<T>::x(order) + a.m[0][1] * BiJet<T>::y(order),
                         a.m[1][0] * BiJet<T>::x(order) + a.m[1][1] * BiJet<T>::y(order));
    }

    int order() const { return fx.order(); }

    /// Differential at 0: [[d fx/dx, d fx/dy], [d fy/dx, d fy/dy]].
    LinMap2<T> differential() const { return LinMap2<T>{{{{fx.coeff(1, 0), fx.coeff(0, 1)}, {fy.coeff(1, 0), fy.coeff(0, 1)}}}}; }

    PlanarMap truncated(int n) const { return PlanarMap(fx.truncated(n), fy.truncated(n)); }

    template <typename U> std::array<U, 2> evaluate(const U& x, const U& y) const
    {
        return {fx.template evaluate<U>(x, y), fy.template evaluate<U>(x, y)};
    }

    friend bool operator==(const PlanarMap& a, const PlanarMap& b) { return a.fx == b.fx && a.fy == b.fy; }

    friend PlanarMap operator+(const PlanarMap& a, const PlanarMap& b) { return PlanarMap(a.fx + b.fx, a.fy + b.fy); }
    friend PlanarMap operator-(const PlanarMap& a, const PlanarMap& b) { return PlanarMap(a.fx - b.fx, a.fy - b.fy); }

    double max_abs() const { return std::max(fx.max_abs(), fy.max_abs()); }
};

/// f o g to the common total-degree order.
template <JetScalar T> PlanarMap<T> compose(const PlanarMap<T>& f, const PlanarMap<T>& g)
{
    return PlanarMap<T>(compose(f.fx, g.fx, g.fy), compose(f.fy, g.fx, g.fy));
}

/// Linear map applied to the vector of components.
template <JetScalar T> PlanarMap<T> apply(const LinMap2<T>& a, const PlanarMap<T>& f)
{
    return PlanarMap<T>(a.m[0][0] * f.fx + a.m[0][1] * f.fy, a.m[1][0] * f.fx + a.m[1][1] * f.fy);
}

/// Compositional inverse by the fixed point G = A^{-1}(Id - R o G), R = f - A;
/// each pass fixes one more degree.
template <JetScalar T> PlanarMap<T> inverse(const PlanarMap<T>& f)
{
    const LinMap2<T> a = f.differential();
    if (is_zero(a.det())) throw DomainError("planar map has a singular differential at 0");
    const LinMap2<T> ai = a.inverse();
    const int n = f.order();
    const PlanarMap<T> rest = f - PlanarMap<T>::linear(a, n);
    PlanarMap<T> g = PlanarMap<T>::linear(ai, 1);
    // after the pass at order p, g is exact through degree p
    for (int p = 2; p <= n; ++p) {
        const PlanarMap<T> gp(g.fx.padded(p), g.fy.padded(p));
        g = apply(ai, PlanarMap<T>::identity(p) - compose(rest.truncated(p), gp));
    }
    return n >= 2 ? g : PlanarMap<T>::linear(ai, n);
}

/// (h(x), y + g(x)).
template <JetScalar T> PlanarMap<T> to_planar(const Shear<T>& s, int order)
{
    const int n = std::min({order, s.base.order(), s.additive.order()});
    BiJet<T> fx(n), fy = BiJet<T>::y(n);
    for (int i = 1; i <= n; ++i) fx.at(i, 0) = s.base[i];
    for (int i = 0; i <= n; ++i) fy.at(i, 0) += s.additive[i];
    return PlanarMap<T>(std::move(fx), std::move(fy));
}

} // namespace homog
