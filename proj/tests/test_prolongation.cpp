#include "doctest.h"

#include "homog/prolongation.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace homog;
using homog::test::Q;
using homog::test::q;

namespace {

GraphCurve power_curve(int p)
{
    return {"x^" + std::to_string(p), [p](double x) { return std::pow(x, p); },
            [p](double x) { return p * std::pow(x, p - 1); },
            [p](double x) { return p * (p - 1) * std::pow(x, p - 2); }};
}

PlanarDiffeo shear_up()
{
    return {"(x, y + x^2)", [](double x, double y) { return Point2{x, y + x * x}; },
            [](double x, double) { return Mat2<double>{{{1, 0}, {2 * x, 1}}}; },
            [](double x, double y) { return Point2{x, y - x * x}; },
            [](double x, double) { return Mat2<double>{{{1, 0}, {-2 * x, 1}}}; }};
}

PlanarDiffeo skew()
{
    return {"(x + y, y)", [](double x, double y) { return Point2{x + y, y}; },
            [](double, double) { return Mat2<double>{{{1, 1}, {0, 1}}}; }};
}

PlanarDiffeo identity_map()
{
    return {"id", [](double x, double y) { return Point2{x, y}; },
            [](double, double) { return Mat2<double>{{{1, 0}, {0, 1}}}; }};
}

std::vector<double> grid(double lo, double hi, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

Jet<Q> constant_jet(const Q& v, int n)
{
    std::vector<Q> c(static_cast<std::size_t>(n + 1), Q(0));
    c[0] = v;
    return Jet<Q>(std::move(c));
}

// a(X(t), Y(t)) for a two-variable jet, by Horner over jets
Jet<Q> substitute(const BiJet<Q>& a, const Jet<Q>& X, const Jet<Q>& Y)
{
    const int n = X.order();
    Jet<Q> acc = constant_jet(Q(0), n);
    for (int i = a.order(); i >= 0; --i) {
        Jet<Q> row = constant_jet(Q(0), n);
        for (int j = a.order() - i; j >= 0; --j) row = row * Y + constant_jet(a(i, j), n);
        acc = acc * X + row;
    }
    return acc;
}

DenseMatrix<Q> random_matrix(std::mt19937_64& rng, int n, int m)
{
    DenseMatrix<Q> J(n, std::vector<Q>(m));
    for (auto& r : J)
        for (auto& v : r) v = homog::test::random_rational(rng, 2, 2);
    return J;
}

} // namespace

TEST_CASE("prolong")
{
    const auto p = prolong(power_curve(2), 1.0);
    CHECK(p.x == 1.0);
    CHECK(p.y == 1.0);
    CHECK(p.xi == 2.0);
    GraphCurve line{"line", [](double x) { return 3 * x - 1; }, [](double) { return 3.0; }, [](double) { return 0.0; }};
    for (double x : grid(-2, 2, 9)) CHECK(prolong(line, x).xi == 3.0);
    GraphCurve half{"sqrt", [](double x) { return std::sqrt(x); }, [](double x) { return 0.5 / std::sqrt(x); }, {}, 0.0, 1.0};
    CHECK_THROWS_AS(prolong(half, -1.0), DomainError);
    GraphCurve nodf{"no derivative", [](double x) { return x; }, {}, {}};
    CHECK_THROWS_AS(prolong(nodf, 0.0), DomainError);
}

TEST_CASE("projection inverts the prolonged graph")
{
    const auto c = power_curve(3);
    for (double x : grid(-1, 1, 11)) {
        const auto p = prolong(c, x);
        CHECK(prolong(c, p.x).y == p.y);
        CHECK(p.x == x);
    }
}

TEST_CASE("x^(4/3) reparametrized by t = x^(1/3)")
{
    const int n = 10;
    std::vector<Q> xc(n + 1, Q(0)), yc(n + 1, Q(0));
    xc[3] = 1;
    yc[4] = 1;
    const auto pj = prolong_parametric(Jet<Q>(xc), Jet<Q>(yc));
    CHECK(pj.xi[0] == 0);
    CHECK(pj.xi[1] == q(4, 3));
    for (int i = 2; i <= pj.xi.order(); ++i) CHECK(pj.xi[i] == 0);
    // the float closed form agrees
    GraphCurve c{"x^(4/3)", [](double x) { return std::cbrt(x) * x; }, [](double x) { return 4.0 / 3.0 * std::cbrt(x); }, {}};
    for (double t : {-0.5, 0.3, 0.9}) CHECK(prolong(c, t * t * t).xi == doctest::Approx(4.0 / 3.0 * t).epsilon(1e-14));
    // vertical tangent: (t^2, t)
    std::vector<Q> a(n + 1, Q(0)), b(n + 1, Q(0));
    a[2] = 1;
    b[1] = 1;
    CHECK_THROWS_AS(prolong_parametric(Jet<Q>(a), Jet<Q>(b)), DomainError);
}

TEST_CASE("lift_diffeo examples")
{
    for (double x : {-1.0, 0.0, 0.5, 2.0})
        for (double xi : {-3.0, 0.0, 1.5}) {
            const auto s = lift_diffeo(shear_up(), x, 0.7, xi);
            CHECK(s.xi == doctest::Approx(xi + 2 * x).epsilon(1e-15));
            CHECK(s.y == doctest::Approx(0.7 + x * x));
            const auto id = lift_diffeo(identity_map(), x, 0.7, xi);
            CHECK(id.xi == xi);
        }
}

TEST_CASE("inverse-components formula agrees with the differential")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const PlanarDiffeo with_inverse = shear_up();
    PlanarDiffeo without = shear_up();
    without.inverse_jacobian = {};
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng), y = u(rng), xi = u(rng);
        const double direct = lift_diffeo(with_inverse, x, y, xi).xi;
        CHECK(lift_slope_via_inverse(with_inverse, x, y, xi) == doctest::Approx(direct).epsilon(1e-13));
        CHECK(lift_slope_via_inverse(without, x, y, xi) == doctest::Approx(direct).epsilon(1e-13));
        if (std::abs(1 + xi) > 1e-3)
            CHECK(lift_slope_via_inverse(skew(), x, y, xi) == doctest::Approx(lift_diffeo(skew(), x, y, xi).xi).epsilon(1e-12));
    }
}

TEST_CASE("vertical image direction is a chart error")
{
    // (x + y, y) sends slope -1 to a vertical line
    try {
        lift_diffeo(skew(), 0.2, 0.3, -1.0);
        FAIL("expected a chart error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("xi = -1") != std::string::npos);
    }
    CHECK_THROWS_AS(lift_slope_via_inverse(skew(), 0.2, 0.3, -1.0), DomainError);
}

TEST_CASE("functoriality")
{
    // psi2 o psi1 = (x + y, y + (x + y)^2)
    const PlanarDiffeo both{"composite", [](double x, double y) { return Point2{x + y, y + (x + y) * (x + y)}; },
                            [](double x, double y) {
                                const double s = 2 * (x + y);
                                return Mat2<double>{{{1, 1}, {s, 1 + s}}};
                            }};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng), y = u(rng), xi = u(rng) * 0.9;
        const auto a = lift_diffeo(skew(), x, y, xi);
        const auto b = lift_diffeo(shear_up(), a.x, a.y, a.xi);
        const auto c = lift_diffeo(both, x, y, xi);
        CHECK(b.x == doctest::Approx(c.x).epsilon(1e-14));
        CHECK(b.y == doctest::Approx(c.y).epsilon(1e-14));
        CHECK(b.xi == doctest::Approx(c.xi).epsilon(1e-13));
    }
}

TEST_CASE("commuting square")
{
    const auto xs = grid(-1, 1, 21);
    SUBCASE("identity")
    {
        const auto sq = prolong_curve_under_map(power_curve(2), identity_map(), xs);
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(sq.lifted[i].xi == prolong(power_curve(2), xs[i]).xi);
        CHECK(sq.max_residual <= 1e-10);
    }
    SUBCASE("x^3 under (x, y + x^2)")
    {
        const auto sq = prolong_curve_under_map(power_curve(3), shear_up(), xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            CHECK(sq.lifted[i].xi == doctest::Approx(3 * x * x + 2 * x).epsilon(1e-14));
            CHECK(std::abs(sq.image[i].xi - (3 * x * x + 2 * x)) <= 1e-10);
        }
        CHECK(sq.max_residual <= 1e-10);
    }
    SUBCASE("x^2 under (x + y, y)")
    {
        const auto sq = prolong_curve_under_map(power_curve(2), skew(), grid(-0.4, 1, 15));
        CHECK(sq.max_residual <= 1e-10);
    }
    SUBCASE("x^2 under diag(2, 1)")
    {
        const PlanarDiffeo d{"diag(2,1)", [](double x, double y) { return Point2{2 * x, y}; },
                             [](double, double) { return Mat2<double>{{{2, 0}, {0, 1}}}; }};
        const auto sq = prolong_curve_under_map(power_curve(2), d, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            // image graph Y = X^2 / 4 has slope X / 2 = x
            CHECK(sq.lifted[i].xi == doctest::Approx(xs[i]).epsilon(1e-12));
            CHECK(std::abs(sq.image[i].xi - xs[i]) <= 1e-12);
        }
    }
    SUBCASE("jet-backed map")
    {
        PlanarMap<Q> m(BiJet<Q>::x(4) + BiJet<Q>::monomial(q(1, 3), 0, 2, 4),
                       BiJet<Q>::y(4) + BiJet<Q>::monomial(q(-1, 2), 2, 0, 4));
        const auto sq = prolong_curve_under_map(power_curve(2), to_diffeo(m), grid(-0.5, 0.5, 11));
        CHECK(sq.max_residual <= 1e-10);
    }
    SUBCASE("vertical image aborts")
    {
        GraphCurve line{"y = -x", [](double x) { return -x; }, [](double) { return -1.0; }, {}};
        CHECK_THROWS_AS(prolong_curve_under_map(line, skew(), xs), DomainError);
    }
}

TEST_CASE("commuting square is exact over rationals")
{
    // graph t -> (t, f(t)) pushed through a polynomial map; slope of the image
    // equals (c + d f') / (a + b f') with the Jacobian entries substituted.
    const int n = 8;
    std::vector<Q> tc(n + 1, Q(0)), fc(n + 1, Q(0));
    tc[1] = 1;
    fc[2] = q(1, 2);
    fc[3] = q(-2, 3);
    const Jet<Q> T(tc), F(fc);
    PlanarMap<Q> m(BiJet<Q>::x(n) + BiJet<Q>::monomial(q(1, 3), 1, 1, n),
                   BiJet<Q>::y(n) + BiJet<Q>::monomial(Q(1), 2, 0, n) + BiJet<Q>::monomial(q(3, 4), 0, 2, n));
    const auto image = prolong_parametric(substitute(m.fx, T, F), substitute(m.fy, T, F));
    const Jet<Q> dF = derivative(F);
    const Jet<Q> a = substitute(d_dx(m.fx), T, F), b = substitute(d_dy(m.fx), T, F);
    const Jet<Q> c = substitute(d_dx(m.fy), T, F), d = substitute(d_dy(m.fy), T, F);
    const int k = image.xi.order();
    const Jet<Q> lifted = ((c + d * dF) * reciprocal(a + b * dF)).truncated(k);
    for (int i = 0; i <= k; ++i) CHECK(image.xi[i] == lifted[i]);
}

TEST_CASE("flattening matrix")
{
    SUBCASE("m = 1, n = 2, J = (0; 1)")
    {
        const auto f = flattening_matrix<Q>({{Q(0)}, {Q(1)}});
        CHECK(f.ell == 0);
        CHECK(f.a == DenseMatrix<Q>{{Q(1)}});
        CHECK(f.det == 1);
    }
    SUBCASE("nonsingular top block")
    {
        const auto f = flattening_matrix<Q>({{Q(1), Q(2)}, {Q(0), Q(1)}, {Q(5), Q(7)}, {Q(3), Q(1)}});
        CHECK(f.ell == 2);
        for (const auto& r : f.a)
            for (const auto& v : r) CHECK(v == 0);
    }
    SUBCASE("permutation needed")
    {
        // J' = [[0, 0], [1, 1]]: the independent row is the second one
        const DenseMatrix<Q> J{{Q(0), Q(0)}, {Q(1), Q(1)}, {Q(0), Q(0)}, {Q(1), Q(3)}};
        const auto f = flattening_matrix(J);
        CHECK(f.ell == 1);
        CHECK(f.perm_top == std::vector<int>{1, 0});
        CHECK(f.perm_bottom == std::vector<int>{1, 0});
        CHECK(f.det != 0);
    }
    SUBCASE("j - i = ell can fail where i - j = ell works")
    {
        // m = 2, n = 4, J' = [[1, 0], [0, 0]], J'' = [[0, 1], [0, 0]]: ell = 1.
        // a_12 = 1 gives J' + A J'' = [[1, 0], [0, 0]], singular;
        // a_21 = 1 gives [[1, 0], [0, 1]].
        const DenseMatrix<Q> J{{Q(1), Q(0)}, {Q(0), Q(0)}, {Q(0), Q(1)}, {Q(0), Q(0)}};
        const auto f = flattening_matrix(J);
        CHECK(f.ell == 1);
        CHECK(f.a_permuted == DenseMatrix<Q>{{Q(0), Q(0)}, {Q(1), Q(0)}});
        CHECK(f.det == 1);
        const DenseMatrix<Q> other{{Q(1), Q(0)}, {Q(0), Q(0)}};
        CHECK(determinant(other) == 0);
    }
    SUBCASE("rank deficient")
    {
        CHECK_THROWS_AS(flattening_matrix<Q>({{Q(1), Q(2)}, {Q(2), Q(4)}, {Q(3), Q(6)}}), DomainError);
    }
    SUBCASE("random 4 x 2")
    {
        std::mt19937_64 rng(2024);
        int done = 0;
        while (done < 100) {
            auto J = random_matrix(rng, 4, 2);
            // force low-rank top blocks often
            if (done % 3 == 0) J[1] = J[0];
            if (done % 5 == 0) J[0] = J[1] = std::vector<Q>{Q(0), Q(0)};
            if (matrix_rank(J) != 2) continue;
            const auto f = flattening_matrix(J);
            DenseMatrix<Q> comb(2, std::vector<Q>(2, Q(0)));
            for (int i = 0; i < 2; ++i)
                for (int c = 0; c < 2; ++c) {
                    comb[i][c] = J[i][c];
                    for (int j = 0; j < 2; ++j) comb[i][c] += f.a[i][j] * J[2 + j][c];
                }
            const Q det = comb[0][0] * comb[1][1] - comb[0][1] * comb[1][0];
            CHECK(det != 0);
            CHECK(det == f.det);
            ++done;
        }
    }
    SUBCASE("general shapes, floats")
    {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> g;
        for (int m = 1; m <= 3; ++m)
            for (int n = m; n <= 6; ++n) {
                DenseMatrix<double> J(n, std::vector<double>(m));
                for (auto& r : J)
                    for (auto& v : r) v = g(rng);
                for (int i = 0; i < m; ++i) J[i] = J[0];
                if (n - m + 1 < m) continue;
                const auto f = flattening_matrix(J);
                CHECK(std::abs(f.det) > 1e-8);
            }
    }
}
