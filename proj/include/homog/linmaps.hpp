#pragma once

// Invertible linear maps of the plane and the functional equations of their
// invariant graphs.

#include "homog/curves.hpp"
#include "homog/shears.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace homog {

template <JetScalar T> using Mat2 = std::array<std::array<T, 2>, 2>;

/// [[a, b], [c, d]] acting on column vectors (x, y).
template <JetScalar T> struct LinMap2 {
    Mat2<T> m;

    T trace() const { return m[0][0] + m[1][1]; }
    T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    friend LinMap2 operator*(const LinMap2& p, const LinMap2& q)
    {
        LinMap2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = p.m[i][0] * q.m[0][j] + p.m[i][1] * q.m[1][j];
        return r;
    }

    LinMap2 inverse() const
    {
        const T d = det();
        if (is_zero(d)) throw DomainError("singular linear map");
        return LinMap2{{{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}}};
    }
};

enum class LinKind { diagonal_real, jordan_block, complex_pair };

std::string to_string(LinKind k);

template <JetScalar T> struct LinClassification {
    LinKind kind;
    /// Eigenvalues in increasing order (real parts for a complex pair, imaginary parts in eig_imag).
    std::array<double, 2> eig;
    std::array<double, 2> eig_imag{0.0, 0.0};
    /// Exact eigenvalues when they are rational (always for the real kind).
    std::optional<std::array<T, 2>> exact;
    /// Columns: eigenvectors, or (eigenvector, generalized eigenvector) for a Jordan block.
    Mat2<double> basis{};
    std::optional<Mat2<T>> exact_basis;
    /// A = lambda * Id.
    bool scalar = false;
};

namespace detail {

template <JetScalar T> std::array<T, 2> eigenvector(const LinMap2<T>& a, const T& lambda)
{
    const T b = a.m[0][1], c = a.m[1][0];
    if (!is_zero(b)) return {b, lambda - a.m[0][0]};
    if (!is_zero(c)) return {lambda - a.m[1][1], c};
    // diagonal matrix
    if (is_zero(T(a.m[0][0] - lambda))) return {T(1), T(0)};
    return {T(0), T(1)};
}

template <JetScalar T> Mat2<double> to_double(const Mat2<T>& m)
{
    Mat2<double> r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = homog::to_double(m[i][j]);
    return r;
}

} // namespace detail

/// Classification from the characteristic polynomial; the sign of the
/// discriminant is decided exactly for rationals.
template <JetScalar T> LinClassification<T> classify(const LinMap2<T>& a)
{
    static_assert(!std::same_as<T, Complex>, "linear maps are real");
    const T det = a.det();
    if (is_zero(det)) throw DomainError("linear map is singular");
    const T tr = a.trace();
    const T disc = tr * tr - scalar_traits<T>::from_int(4) * det;
    LinClassification<T> out;
    const T two = scalar_traits<T>::from_int(2);

    bool disc_zero, disc_neg;
    if constexpr (std::same_as<T, Rational>) {
        disc_zero = disc == 0;
        disc_neg = disc < 0;
    } else {
        const double scale = std::max(1.0, tr * tr);
        disc_zero = std::abs(disc) <= float_decision_tol * scale;
        disc_neg = !disc_zero && disc < 0;
    }

    if (disc_neg) {
        out.kind = LinKind::complex_pair;
        const double re = to_double(tr) / 2.0, im = std::sqrt(-to_double(disc)) / 2.0;
        out.eig = {re, re};
        out.eig_imag = {-im, im};
        return out;
    }
    if (disc_zero) {
        const T lambda = tr / two;
        out.eig = {to_double(lambda), to_double(lambda)};
        out.exact = std::array<T, 2>{lambda, lambda};
        const bool scalar = is_zero(a.m[0][1]) && is_zero(a.m[1][0]) && is_zero(T(a.m[0][0] - a.m[1][1]));
        if (scalar) {
            out.kind = LinKind::diagonal_real;
            out.scalar = true;
            out.exact_basis = Mat2<T>{{{T(1), T(0)}, {T(0), T(1)}}};
        } else {
            out.kind = LinKind::jordan_block;
            auto v = detail::eigenvector(a, lambda);
            // generalized vector w with (A - lambda) w = v
            std::array<T, 2> w;
            const T p = a.m[0][0] - lambda, q = a.m[0][1];
            if (!is_zero(q)) w = {T(0), T(v[0] / q)};
            else if (!is_zero(p)) w = {T(v[0] / p), T(0)};
            else {
                const T r = a.m[1][0], s = a.m[1][1] - lambda;
                w = !is_zero(r) ? std::array<T, 2>{T(v[1] / r), T(0)} : std::array<T, 2>{T(0), T(v[1] / s)};
            }
            out.exact_basis = Mat2<T>{{{v[0], w[0]}, {v[1], w[1]}}};
        }
        out.basis = detail::to_double(*out.exact_basis);
        return out;
    }
    out.kind = LinKind::diagonal_real;
    std::optional<T> root;
    if constexpr (std::same_as<T, Rational>) root = exact_root(disc, 2u);
    else root = std::sqrt(disc);
    if (root) {
        const T l1 = (tr - *root) / two, l2 = (tr + *root) / two;
        out.exact = std::array<T, 2>{l1, l2};
        out.eig = {to_double(l1), to_double(l2)};
        auto v1 = detail::eigenvector(a, l1), v2 = detail::eigenvector(a, l2);
        out.exact_basis = Mat2<T>{{{v1[0], v2[0]}, {v1[1], v2[1]}}};
        out.basis = detail::to_double(*out.exact_basis);
    } else {
        const double t = to_double(tr), s = std::sqrt(to_double(disc));
        out.eig = {(t - s) / 2.0, (t + s) / 2.0};
        LinMap2<double> ad{detail::to_double(a.m)};
        auto v1 = detail::eigenvector(ad, out.eig[0]), v2 = detail::eigenvector(ad, out.eig[1]);
        out.basis = Mat2<double>{{{v1[0], v2[0]}, {v1[1], v2[1]}}};
    }
    return out;
}

/// Normalized eigenvalue pair for f(l1 x) = l2 f(x): squared when either is
/// negative, then inverted when l1 > 1, so that 0 < l1 <= 1 and l2 > 0.
template <JetScalar T> struct NormalizedPair {
    T l1;
    T l2;
    std::vector<Reduction> reductions;
};

template <JetScalar T> NormalizedPair<T> normalize_pair(const T& l1, const T& l2)
{
    if (is_zero(l1) || is_zero(l2)) throw DomainError("eigenvalues must be nonzero");
    NormalizedPair<T> out{l1, l2, {}};
    if (out.l1 < 0 || out.l2 < 0) {
        out.l1 = out.l1 * out.l1;
        out.l2 = out.l2 * out.l2;
        out.reductions.push_back(Reduction::squared);
    }
    if (out.l1 > 1) {
        out.l1 = T(1) / out.l1;
        out.l2 = T(1) / out.l2;
        out.reductions.push_back(Reduction::inverted);
    }
    return out;
}

template <JetScalar T> struct DiagonalSolutions {
    /// Exponents m <= N with l1^m = l2 for the original eigenvalues.
    std::vector<int> exponents;
    /// x^m for each exponent, as jets of order N.
    std::vector<Jet<T>> basis;
    NormalizedPair<T> normalized;
    /// false when resonance was decided with a floating tolerance.
    bool exact = true;
    std::string warning;
};

/// Formal solutions of f(l1 x) = l2 f(x) with f(0) = 0: the span of the
/// monomials x^m with l1^m = l2.
template <JetScalar T> DiagonalSolutions<T> diagonal_invariant_solutions(const T& l1, const T& l2, int order = default_order)
{
    static_assert(!std::same_as<T, Complex>, "eigenvalues are real");
    DiagonalSolutions<T> out{{}, {}, normalize_pair(l1, l2), scalar_traits<T>::exact, ""};
    if (!out.exact) out.warning = "resonance decided with relative tolerance 1e-12; use the rational kind for a formal conclusion";
    T p(1);
    for (int m = 1; m <= order; ++m) {
        p = p * l1;
        bool hit;
        if constexpr (std::same_as<T, Rational>) hit = p == l2;
        else hit = std::abs(p - l2) <= 1e-12 * std::max(std::abs(p), std::abs(l2));
        if (hit) {
            out.exponents.push_back(m);
            out.basis.push_back(Jet<T>::monomial(T(1), m, order));
        }
    }
    return out;
}

struct RigidityDegree {
    int k_min;
    int degree_bound;
};

/// Smallest k with l1^k < l2 for 0 < l1 < 1, l2 > 0; every C^k solution of
/// f(l1 x) = l2 f(x) is then a polynomial of degree <= k - 1.
template <JetScalar T> RigidityDegree rigidity_degree(const T& l1, const T& l2)
{
    if (!(l1 > 0 && l1 < 1)) throw DomainError("rigidity degree needs 0 < lambda1 < 1");
    if (!(l2 > 0)) throw DomainError("rigidity degree needs lambda2 > 0");
    T p = l1;
    int k = 1;
    while (!(p < l2)) {
        p = p * l1;
        ++k;
    }
    return {k, k - 1};
}

/// max over the grid of |f^(k)(l1 x) - (l2 / l1^k) f^(k)(x)| for a sampler of f^(k).
double derivative_transfer_residual(double l1, double l2, int k, const RealMap& fk, std::span<const double> grid);

struct JordanResiduals {
    std::vector<double> x;
    /// f(lambda x + f(x)) - lambda f(x)
    std::vector<double> inveq;
    /// f''(lambda x + f(x)) - f''(x) lambda^2 / (lambda + f'(x))^3
    std::vector<double> replace;
    /// lambda^2 / (lambda + f'(x))^3
    std::vector<double> amplification;
    /// f(x + j f(x)) - f(x) per j (lambda = 1 only), indexed like js.
    std::vector<int> js;
    std::vector<std::vector<double>> inveq1;
};

/// Residuals of the Jordan-block invariance identities on a grid.
JordanResiduals jordan_residuals(double lambda, const GraphCurve& f, std::span<const double> grid,
                                 std::span<const int> js = {});

/// x_j = x'_j + floor((x0 - x'_j) / f(x'_j)) f(x'_j) for each x'_j with f(x'_j) != 0.
std::vector<double> jordan_sequence(double x0, const RealMap& f, std::span<const double> x_primes);

struct WeakRegularityExample {
    double alpha;
    /// floor(alpha), decided exactly from l1^m >= l2.
    int smoothness_class;
    /// |x|^alpha, even in x.
    RealMap sampler;
};

/// f(x) = |x|^alpha with alpha = ln l2 / ln l1, solving f(l1 x) = l2 f(x);
/// C^floor(alpha) but not C^{floor(alpha)+1} at 0. Rejects integral alpha.
WeakRegularityExample weak_regularity_example(const Rational& l1, const Rational& l2);

} // namespace homog
