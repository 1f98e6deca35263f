#pragma once

// One-variable analytic germs fixing 0: composition, compositional inverse,
// iteration, Koenigs linearization and the parabolic normal form.

#include "homog/jet.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

namespace homog {

/// A jet with c_0 = 0 and multiplier c_1 != 0.
template <JetScalar T> class Germ1 {
public:
    explicit Germ1(Jet<T> jet) : jet_(std::move(jet))
    {
        if (jet_.order() < 1) throw DomainError("a germ needs truncation order >= 1");
        if (!is_zero(jet_[0])) throw DomainError("a germ must fix 0 (nonzero constant term)");
        if (is_zero(jet_[1])) throw DomainError("a germ must have nonzero multiplier");
        if constexpr (!scalar_traits<T>::exact) {
            if (jet_[0] != T(0)) {
                std::vector<T> c(jet_.coeffs().begin(), jet_.coeffs().end());
                c[0] = T(0);
                jet_ = Jet<T>(std::move(c));
            }
        }
    }

    static Germ1 identity(int order) { return Germ1(Jet<T>::identity(order)); }
    static Germ1 linear(const T& lambda, int order) { return Germ1(Jet<T>::monomial(lambda, 1, order)); }

    const Jet<T>& jet() const noexcept { return jet_; }
    const T& multiplier() const { return jet_[1]; }
    int order() const noexcept { return jet_.order(); }
    const T& operator[](int i) const { return jet_[i]; }

    Germ1 truncated(int order) const { return Germ1(jet_.truncated(order)); }

    bool is_identity() const
    {
        if (!is_one(jet_[1])) return false;
        for (int i = 2; i <= order(); ++i)
            if (!is_zero(jet_[i])) return false;
        return true;
    }

    friend bool operator==(const Germ1& a, const Germ1& b) { return a.jet_ == b.jet_; }

private:
    Jet<T> jet_;
};

template <JetScalar T> Germ1<T> compose(const Germ1<T>& outer, const Germ1<T>& inner)
{
    return Germ1<T>(compose(outer.jet(), inner.jet()));
}

template <JetScalar T> Jet<T> compose(const Jet<T>& outer, const Germ1<T>& inner)
{
    return compose(outer, inner.jet());
}

namespace detail {

// a * b where a is known to be divisible by x^v: (a / x^v) * b shifted back up,
// so the product keeps a's order even though b is one order shorter.
template <JetScalar T> Jet<T> mul_with_valuation(const Jet<T>& a, int v, const Jet<T>& b)
{
    int n = a.order();
    if (v > n) return Jet<T>::zero(n);
    Jet<T> lowered = shift_down(a, v);
    int m = std::min(lowered.order(), b.order());
    Jet<T> prod = lowered.truncated(m) * b.truncated(m);
    std::vector<T> out(static_cast<std::size_t>(n + 1), T(0));
    for (int i = 0; i <= m && i + v <= n; ++i) out[static_cast<std::size_t>(i + v)] = prod[i];
    return Jet<T>(std::move(out));
}

} // namespace detail

/// Compositional inverse by Newton iteration on g(h) = x; exact for rationals.
template <JetScalar T> Germ1<T> inverse(const Germ1<T>& g)
{
    const int n = g.order();
    const Jet<T>& gj = g.jet();
    Jet<T> dg = n >= 2 ? derivative(gj) : Jet<T>::constant(gj[1], 0);
    Jet<T> h = Jet<T>::monomial(T(T(1) / gj[1]), 1, n);
    const Jet<T> x = Jet<T>::identity(n);
    // h is correct modulo x^(e+1); one Newton step takes e to 2e + 1.
    for (int e = 1; e < n; e = 2 * e + 1) {
        Jet<T> residual = compose(gj, h) - x;
        Jet<T> slope = n >= 2 ? compose(dg, h.truncated(n - 1)) : dg;
        Jet<T> correction = detail::mul_with_valuation(residual, e + 1, reciprocal(slope));
        h = h - correction;
    }
    return Germ1<T>(std::move(h));
}

/// f^{on}, with f^{o0} = id and negative n iterating the inverse.
template <JetScalar T> Germ1<T> iterate(const Germ1<T>& f, long n)
{
    if (n < 0) return iterate(inverse(f), -n);
    Germ1<T> acc = Germ1<T>::identity(f.order());
    Germ1<T> base = f;
    while (n > 0) {
        if (n & 1) acc = compose(acc, base);
        n >>= 1;
        if (n) base = compose(base, base);
    }
    return acc;
}

enum class MultiplierRegime { attracting, repelling, parabolic, elliptic };

/// Classifies |lambda| < 1, > 1, lambda = 1, or |lambda| = 1 otherwise.
template <JetScalar T> MultiplierRegime multiplier_regime(const T& lambda)
{
    if (is_one(lambda)) return MultiplierRegime::parabolic;
    if constexpr (std::same_as<T, Rational>) {
        Rational a = abs(lambda);
        if (a == 1) return MultiplierRegime::elliptic;
        return a < 1 ? MultiplierRegime::attracting : MultiplierRegime::repelling;
    } else {
        double a = std::abs(lambda);
        if (std::abs(a - 1.0) <= float_decision_tol) return MultiplierRegime::elliptic;
        return a < 1.0 ? MultiplierRegime::attracting : MultiplierRegime::repelling;
    }
}

/// Koenigs coordinate eta with eta o f = lambda * eta and eta'(0) = 1.
///
/// Solved coefficient by coefficient from
///   eta_n (lambda^n - lambda) = - sum_{m<n} eta_m [f^m]_n,
/// where [f^m]_n is the x^n coefficient of the m-th multiplicative power of f.
template <JetScalar T> Germ1<T> koenigs_linearize(const Germ1<T>& f, int order = default_order)
{
    const T lambda = f.multiplier();
    auto regime = multiplier_regime(lambda);
    if (regime == MultiplierRegime::parabolic || regime == MultiplierRegime::elliptic)
        throw DomainError("Koenigs linearization needs |lambda| != 1");
    const int n = std::min(order, f.order());
    const Jet<T> fj = f.jet().truncated(n);

    std::vector<Jet<T>> powers;
    powers.reserve(static_cast<std::size_t>(n));
    powers.push_back(fj);
    for (int m = 2; m < n; ++m) powers.push_back(powers.back() * fj);

    std::vector<T> eta(static_cast<std::size_t>(n + 1), T(0));
    eta[1] = T(1);
    T lambda_pow = lambda;
    for (int k = 2; k <= n; ++k) {
        lambda_pow = lambda_pow * lambda;
        T rhs(0);
        for (int m = 1; m < k; ++m) rhs += eta[m] * powers[static_cast<std::size_t>(m - 1)][k];
        eta[k] = -rhs / (lambda_pow - lambda);
    }
    return Germ1<T>(Jet<T>(std::move(eta)));
}

/// Second route to the Koenigs coordinate: solve f o zeta = zeta(lambda x)
/// for zeta = eta^{-1} and invert. Used to cross-check uniqueness.
template <JetScalar T> Germ1<T> koenigs_linearize_via_inverse(const Germ1<T>& f, int order = default_order)
{
    const T lambda = f.multiplier();
    auto regime = multiplier_regime(lambda);
    if (regime == MultiplierRegime::parabolic || regime == MultiplierRegime::elliptic)
        throw DomainError("Koenigs linearization needs |lambda| != 1");
    const int n = std::min(order, f.order());
    const Jet<T> fj = f.jet().truncated(n);
    std::vector<T> zeta(static_cast<std::size_t>(n + 1), T(0));
    zeta[1] = T(1);
    T lambda_pow = lambda;
    for (int k = 2; k <= n; ++k) {
        lambda_pow = lambda_pow * lambda;
        Jet<T> partial = compose(fj, Jet<T>(zeta));
        // [f o zeta]_k = lambda zeta_k + partial_k; it must equal lambda^k zeta_k.
        zeta[k] = partial[k] / (lambda_pow - lambda);
    }
    return inverse(Germ1<T>(Jet<T>(std::move(zeta))));
}

/// k such that f(x) - x has valuation k + 1; throws when f is the identity jet.
template <JetScalar T> int parabolic_order(const Germ1<T>& f)
{
    if (!is_one(f.multiplier())) throw DomainError("parabolic order needs multiplier exactly 1");
    for (int i = 2; i <= f.order(); ++i)
        if (!is_zero(f[i])) return i - 1;
    throw DomainError("germ is the identity to the truncation order; no parabolic structure");
}

/// x - x^{k+1} + a x^{2k+1} + O(x^{2k+2}) after conjugation.
template <JetScalar T> struct ParabolicData {
    int k;
    T a;
    /// conjugator o source o conjugator^{-1} is the normal form.
    Germ1<T> conjugator;
    /// true when the inverse germ was used to fix the sign of x^{k+1}.
    bool sign_flipped;
    /// The germ that was conjugated: f, or f^{-1} when sign_flipped.
    Germ1<T> source;
    /// Full conjugated jet; matches the normal form through order 2k + 1.
    Germ1<T> normal_form;
};

namespace detail {

// c with c^k = target, used for the scaling x -> c x.
template <JetScalar T> T kth_root_for_scaling(const T& target, int k)
{
    if constexpr (std::same_as<T, Rational>) {
        auto r = exact_root(target, static_cast<unsigned>(k));
        if (!r)
            throw DomainError("normalizing scale " + to_string(target) + "^(1/" + std::to_string(k)
                              + ") is irrational; use the real kind");
        return *r;
    } else if constexpr (std::same_as<T, double>) {
        double root = std::pow(std::abs(target), 1.0 / k);
        return target < 0 ? -root : root;
    } else {
        return std::pow(target, 1.0 / k);
    }
}

} // namespace detail

/// Brings a parabolic germ to x - x^{k+1} + a x^{2k+1} + O(x^{2k+2}).
///
/// Real kinds with even k and positive x^{k+1} coefficient pass to the inverse
/// germ first. Then a linear scaling fixes the x^{k+1} coefficient to -1 and
/// the polynomial changes x + c x^j (j = 2..k) remove the terms of degree
/// k+2..2k one at a time; each one only affects degrees >= k + j.
template <JetScalar T> ParabolicData<T> parabolic_normalize(const Germ1<T>& f, int order = default_order)
{
    const int n = std::min(order, f.order());
    Germ1<T> work = f.truncated(n);
    const int k = parabolic_order(work);
    if (n < 2 * k + 1)
        throw DomainError("parabolic normal form needs truncation order >= 2k+1 = " + std::to_string(2 * k + 1));
    T lead = work[k + 1];
    bool flipped = false;
    if constexpr (!std::same_as<T, Complex>) {
        if (k % 2 == 0 && lead > 0) {
            work = inverse(work);
            lead = work[k + 1];
            flipped = true;
        }
    }
    const T scale = detail::kth_root_for_scaling(T(-lead), k);
    Germ1<T> conj = Germ1<T>::linear(scale, n);
    Germ1<T> h = compose(compose(conj, work), Germ1<T>::linear(T(T(1) / scale), n));

    for (int j = 2; j <= k; ++j) {
        const T c = -h[k + j] / scalar_traits<T>::from_int(k + 1 - j);
        if (is_zero(c)) continue;
        Germ1<T> step(Jet<T>::identity(n) + Jet<T>::monomial(c, j, n));
        conj = compose(step, conj);
        h = compose(compose(step, h), inverse(step));
    }
    const T a = h[2 * k + 1];
    return ParabolicData<T>{k, a, conj, flipped, work, h};
}

/// The k unit solutions of (a_{k+1}/|a_{k+1}|) v^k = -1, by increasing argument in [0, 2pi).
template <JetScalar T> std::vector<Complex> attracting_directions(const Germ1<T>& f)
{
    const int k = parabolic_order(f);
    const Complex lead = to_complex(f[k + 1]);
    const double base = std::arg(-std::abs(lead) / lead);
    std::vector<double> angles;
    for (int j = 0; j < k; ++j) {
        double theta = std::fmod((base + 2.0 * std::numbers::pi * j) / k, 2.0 * std::numbers::pi);
        if (theta < 0) theta += 2.0 * std::numbers::pi;
        angles.push_back(theta);
    }
    std::sort(angles.begin(), angles.end());
    std::vector<Complex> out;
    for (double t : angles) out.push_back(std::polar(1.0, t));
    return out;
}

} // namespace homog
