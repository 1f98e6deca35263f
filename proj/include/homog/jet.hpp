#pragma once

// Truncated one-variable power series ("jets") over exact rationals, reals or
// complex doubles. A Jet of order N stores c_0..c_N; every binary operation
// truncates to the smaller operand order and never pads.

#include "homog/error.hpp"
#include "homog/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace homog {

/// Default truncation order for solvers.
inline constexpr int default_order = 32;

template <JetScalar T> class Jet {
public:
    using scalar_type = T;

    /// coeffs must be non-empty; the order is coeffs.size() - 1.
    explicit Jet(std::vector<T> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) throw DomainError("a jet needs at least one coefficient");
    }

    static Jet zero(int order) { return Jet(std::vector<T>(checked_size(order), T(0))); }

    static Jet constant(const T& c, int order)
    {
        Jet j = zero(order);
        j.coeffs_[0] = c;
        return j;
    }

    static Jet monomial(const T& c, int power, int order)
    {
        Jet j = zero(order);
        if (power >= 0 && power <= order) j.coeffs_[static_cast<std::size_t>(power)] = c;
        return j;
    }

    /// The identity germ x.
    static Jet identity(int order)
    {
        if (order < 1) throw DomainError("identity jet needs order >= 1");
        return monomial(T(1), 1, order);
    }

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const T& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    /// Coefficient i, or zero above the truncation order.
    T coeff(int i) const { return i >= 0 && i <= order() ? coeffs_[static_cast<std::size_t>(i)] : T(0); }
    std::span<const T> coeffs() const noexcept { return coeffs_; }

    Jet truncated(int order) const
    {
        if (order > this->order()) throw DomainError("cannot raise the truncation order of a jet");
        return Jet(std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    /// Index of the first nonzero coefficient (exact test for rationals,
    /// float_decision_tol for float kinds); nullopt for the zero jet.
    std::optional<int> valuation() const
    {
        for (int i = 0; i <= order(); ++i)
            if (!is_zero(coeffs_[static_cast<std::size_t>(i)])) return i;
        return std::nullopt;
    }

    bool is_zero_jet() const { return !valuation().has_value(); }

    friend bool operator==(const Jet& a, const Jet& b) { return a.coeffs_ == b.coeffs_; }

    Jet operator-() const
    {
        std::vector<T> out(coeffs_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coeffs_[i];
        return Jet(std::move(out));
    }

    friend Jet operator+(const Jet& a, const Jet& b)
    {
        int n = std::min(a.order(), b.order());
        std::vector<T> out(static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) out[i] = a.coeffs_[i] + b.coeffs_[i];
        return Jet(std::move(out));
    }

    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        int n = std::min(a.order(), b.order());
        std::vector<T> out(static_cast<std::size_t>(n + 1), T(0));
        for (int i = 0; i <= n; ++i) {
            if (is_exact_zero(a.coeffs_[i])) continue;
            for (int j = 0; i + j <= n; ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Jet(std::move(out));
    }

    friend Jet operator*(const T& s, const Jet& a)
    {
        std::vector<T> out(a.coeffs_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.coeffs_[i];
        return Jet(std::move(out));
    }

    friend Jet operator*(const Jet& a, const T& s) { return s * a; }

    /// Evaluates the truncated polynomial by Horner's rule.
    template <typename U> U evaluate(const U& x) const
    {
        U acc = U(to_eval<U>(coeffs_.back()));
        for (int i = order() - 1; i >= 0; --i) acc = acc * x + U(to_eval<U>(coeffs_[i]));
        return acc;
    }

    T evaluate(const T& x) const { return evaluate<T>(x); }

private:
    static std::size_t checked_size(int order)
    {
        if (order < 0) throw DomainError("negative truncation order");
        return static_cast<std::size_t>(order) + 1;
    }

    static bool is_exact_zero(const T& x) { return x == T(0); }

    template <typename U> static U to_eval(const T& c)
    {
        if constexpr (std::same_as<T, Rational> && !std::same_as<U, Rational>) return U(c.get_d());
        else return U(c);
    }

    std::vector<T> coeffs_;
};

/// Scalar-kind-aware equality up to a tolerance on every coefficient (exact for rationals).
template <JetScalar T> double max_abs_diff(const Jet<T>& a, const Jet<T>& b)
{
    int n = std::min(a.order(), b.order());
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) worst = std::max(worst, magnitude(T(a[i] - b[i])));
    return worst;
}

/// Termwise derivative; the order drops by one.
template <JetScalar T> Jet<T> derivative(const Jet<T>& j)
{
    if (j.order() < 1) throw DomainError("derivative of an order-0 jet has no coefficients left");
    std::vector<T> out(static_cast<std::size_t>(j.order()));
    for (int i = 1; i <= j.order(); ++i) out[i - 1] = scalar_traits<T>::from_int(i) * j[i];
    return Jet<T>(std::move(out));
}

/// Multiplicative inverse of a series with nonzero constant term.
template <JetScalar T> Jet<T> reciprocal(const Jet<T>& a)
{
    if (a[0] == T(0)) throw DomainError("reciprocal of a series with zero constant term");
    int n = a.order();
    std::vector<T> out(static_cast<std::size_t>(n + 1), T(0));
    T inv0 = T(1) / a[0];
    out[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        T acc(0);
        for (int i = 1; i <= k; ++i) acc += a[i] * out[k - i];
        out[k] = -acc * inv0;
    }
    return Jet<T>(std::move(out));
}

/// Integer power of a series (negative exponents need a nonzero constant term).
template <JetScalar T> Jet<T> pow(const Jet<T>& a, long e)
{
    if (e < 0) return pow(reciprocal(a), -e);
    Jet<T> acc = Jet<T>::constant(T(1), a.order());
    Jet<T> base = a;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

/// outer(inner(x)) truncated to min order. inner must have zero constant term.
template <JetScalar T> Jet<T> compose(const Jet<T>& outer, const Jet<T>& inner)
{
    if (!is_zero(inner[0])) throw DomainError("jet composition needs an inner series with zero constant term");
    int n = std::min(outer.order(), inner.order());
    std::vector<T> ic(inner.coeffs().begin(), inner.coeffs().begin() + n + 1);
    ic[0] = T(0);
    Jet<T> inner_n(std::move(ic));
    Jet<T> acc = Jet<T>::constant(outer[n], n);
    for (int i = n - 1; i >= 0; --i) {
        acc = acc * inner_n;
        std::vector<T> c(acc.coeffs().begin(), acc.coeffs().end());
        c[0] += outer[i];
        acc = Jet<T>(std::move(c));
    }
    return acc;
}

/// The series divided by x^shift (the first shift coefficients must vanish);
/// the order drops by shift.
template <JetScalar T> Jet<T> shift_down(const Jet<T>& a, int shift)
{
    if (shift < 0 || shift > a.order()) throw DomainError("invalid shift for jet division by x^k");
    for (int i = 0; i < shift; ++i)
        if (!is_zero(a[i])) throw DomainError("jet is not divisible by the requested power of x");
    return Jet<T>(std::vector<T>(a.coeffs().begin() + shift, a.coeffs().end()));
}

} // namespace homog
