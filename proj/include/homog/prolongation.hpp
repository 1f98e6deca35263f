#pragma once

// Prolongation of graph curves to (x, y, slope), the lifted action of planar
// diffeomorphisms on slopes, and the flattening matrix for rank-m differentials.

#include "homog/curves.hpp"
#include "homog/planar.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <functional>
#include <optional>
#include <vector>

namespace homog {

using Point2 = std::array<double, 2>;
using PointMap = std::function<Point2(double, double)>;
using JacobianMap = std::function<Mat2<double>(double, double)>;

/// Planar diffeomorphism given by evaluators; the inverse is optional and only
/// used by the inverse-components cross-check.
struct PlanarDiffeo {
    std::string name;
    PointMap map;
    JacobianMap jacobian;
    PointMap inverse_map = {};
    JacobianMap inverse_jacobian = {};
};

/// Evaluators of a jet-backed planar map (the truncated polynomial).
template <JetScalar T> PlanarDiffeo to_diffeo(const PlanarMap<T>& f, std::string name = "jet")
{
    auto dbl = [](const BiJet<T>& b) {
        BiJet<double> r(b.order());
        for (int i = 0; i <= b.order(); ++i)
            for (int j = 0; i + j <= b.order(); ++j) r.at(i, j) = to_double(b(i, j));
        return r;
    };
    const BiJet<double> fx = dbl(f.fx), fy = dbl(f.fy);
    const int n = f.order();
    const BiJet<double> zero(0);
    const BiJet<double> fxx = n >= 1 ? d_dx(fx) : zero, fxy = n >= 1 ? d_dy(fx) : zero;
    const BiJet<double> fyx = n >= 1 ? d_dx(fy) : zero, fyy = n >= 1 ? d_dy(fy) : zero;
    return PlanarDiffeo{std::move(name),
                        [fx, fy](double x, double y) { return Point2{fx.evaluate(x, y), fy.evaluate(x, y)}; },
                        [fxx, fxy, fyx, fyy](double x, double y) {
                            return Mat2<double>{{{fxx.evaluate(x, y), fxy.evaluate(x, y)},
                                                 {fyx.evaluate(x, y), fyy.evaluate(x, y)}}};
                        }};
}

struct ProlongedPoint {
    double x;
    double y;
    double xi;
};

/// (x, f(x), f'(x)).
ProlongedPoint prolong(const GraphCurve& c, double x);

/// (psi(p), xi') with xi' = (c + d xi) / (a + b xi) for d psi(p) = [[a, b], [c, d]].
/// Throws DomainError when the image direction is vertical.
ProlongedPoint lift_diffeo(const PlanarDiffeo& psi, double x, double y, double xi);

/// The same slope from the components (g, h) of psi^{-1} at q = psi(p):
/// xi' = (xi g_x - h_x) / (h_y - xi g_y). Uses the inverse Jacobian when
/// available, otherwise inverts d psi(p).
double lift_slope_via_inverse(const PlanarDiffeo& psi, double x, double y, double xi);

struct CommutingSquare {
    std::vector<double> x;
    /// prolong then lift
    std::vector<ProlongedPoint> lifted;
    /// map then prolong (slope of the image curve by finite differences)
    std::vector<ProlongedPoint> image;
    double max_residual = 0.0;
};

/// Both paths around the square on the sampled x.
CommutingSquare prolong_curve_under_map(const GraphCurve& c, const PlanarDiffeo& psi, std::span<const double> xs);

template <JetScalar T> struct ProlongedJet {
    Jet<T> x;
    Jet<T> y;
    /// slope Y'(t) / X'(t)
    Jet<T> xi;
};

/// Exact prolongation of a parametrized curve t -> (X(t), Y(t)): the slope
/// series Y'/X' after cancelling the common power of t. Fails when X' vanishes
/// to higher order than Y' (vertical tangent) or identically.
template <JetScalar T> ProlongedJet<T> prolong_parametric(const Jet<T>& X, const Jet<T>& Y)
{
    const Jet<T> dx = derivative(X), dy = derivative(Y);
    const auto v = dx.valuation();
    if (!v) throw DomainError("X'(t) vanishes to the truncation order");
    if (auto w = dy.valuation(); w && *w < *v) throw DomainError("vertical tangent: Y' vanishes to lower order than X'");
    const Jet<T> num = shift_down(dy, std::min(*v, dy.order()));
    const Jet<T> den = shift_down(dx, *v);
    const int n = std::min(num.order(), den.order());
    return {X, Y, num.truncated(n) * reciprocal(den.truncated(n))};
}

template <JetScalar T> using DenseMatrix = std::vector<std::vector<T>>;

/// Rank by Gaussian elimination (exact for rationals, relative pivot tolerance 1e-12 for floats).
template <JetScalar T> int matrix_rank(DenseMatrix<T> a)
{
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    double scale = 0.0;
    for (const auto& r : a)
        for (const auto& v : r) scale = std::max(scale, magnitude(v));
    auto negligible = [&](const T& v) {
        if constexpr (scalar_traits<T>::exact) return v == T(0);
        else return magnitude(v) <= 1e-12 * scale;
    };
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
        std::size_t piv = rank;
        double best = -1.0;
        for (std::size_t r = rank; r < rows; ++r) {
            if (negligible(a[r][c])) continue;
            if constexpr (scalar_traits<T>::exact) {
                piv = r;
                best = 1.0;
                break;
            } else if (magnitude(a[r][c]) > best) {
                best = magnitude(a[r][c]);
                piv = r;
            }
        }
        if (best < 0) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == T(0)) continue;
            const T f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

template <JetScalar T> T determinant(DenseMatrix<T> a)
{
    const std::size_t n = a.size();
    T det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c; r < n; ++r) {
            if constexpr (scalar_traits<T>::exact) {
                if (a[r][c] != T(0)) {
                    piv = r;
                    break;
                }
            } else if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        if (a[piv][c] == T(0)) return T(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const T f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

template <JetScalar T> struct Flattening {
    /// rank of the top m x m block J'
    int ell;
    /// perm_top[i]: original row of J' placed at position i (likewise for J'').
    std::vector<int> perm_top;
    std::vector<int> perm_bottom;
    /// 0/1 matrix in the permuted coordinates: a_ij = 1 iff i - j = ell (1-based).
    DenseMatrix<T> a_permuted;
    /// The same matrix in the original coordinates.
    DenseMatrix<T> a;
    /// J' + A J'' in the original coordinates.
    DenseMatrix<T> combination;
    T det;
};

/// A (m x (n-m)) with J' + A J'' nonsingular for an n x m matrix J of rank m.
template <JetScalar T> Flattening<T> flattening_matrix(const DenseMatrix<T>& J)
{
    const int n = static_cast<int>(J.size());
    if (n == 0) throw DomainError("empty matrix");
    const int m = static_cast<int>(J[0].size());
    if (m < 1 || n < m) throw DomainError("flattening needs an n x m matrix with n >= m >= 1");
    for (const auto& r : J)
        if (static_cast<int>(r.size()) != m) throw DomainError("ragged matrix");
    if (matrix_rank(J) != m) throw DomainError("matrix is rank deficient (rank < " + std::to_string(m) + ")");

    Flattening<T> out;
    DenseMatrix<T> chosen;
    // greedy independent rows: first from J', then from J''
    auto try_add = [&](int row) {
        DenseMatrix<T> trial = chosen;
        trial.push_back(J[row]);
        if (matrix_rank(trial) == static_cast<int>(trial.size())) {
            chosen = std::move(trial);
            return true;
        }
        return false;
    };
    std::vector<int> top_rest, bottom_rest;
    for (int i = 0; i < m; ++i) (try_add(i) ? out.perm_top : top_rest).push_back(i);
    out.ell = static_cast<int>(out.perm_top.size());
    for (int i = m; i < n; ++i) {
        if (static_cast<int>(chosen.size()) < m && try_add(i)) out.perm_bottom.push_back(i - m);
        else bottom_rest.push_back(i - m);
    }
    out.perm_top.insert(out.perm_top.end(), top_rest.begin(), top_rest.end());
    out.perm_bottom.insert(out.perm_bottom.end(), bottom_rest.begin(), bottom_rest.end());

    const int k = n - m;
    out.a_permuted.assign(m, std::vector<T>(k, T(0)));
    out.a.assign(m, std::vector<T>(k, T(0)));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= k; ++j)
            if (i - j == out.ell) {
                out.a_permuted[i - 1][j - 1] = T(1);
                out.a[out.perm_top[i - 1]][out.perm_bottom[j - 1]] = T(1);
            }
    out.combination.assign(m, std::vector<T>(m, T(0)));
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < m; ++c) {
            T v = J[i][c];
            for (int j = 0; j < k; ++j)
                if (out.a[i][j] != T(0)) v += out.a[i][j] * J[m + j][c];
            out.combination[i][c] = v;
        }
    out.det = determinant(out.combination);
    if (is_zero(out.det)) throw Error("flattening matrix produced a singular combination (internal error)");
    return out;
}

} // namespace homog
