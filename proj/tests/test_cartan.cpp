#include "doctest.h"

#include "homog/cartan.hpp"

#include <cmath>
#include <random>

using namespace homog;

namespace {

std::vector<Point2> grid5()
{
    std::vector<Point2> g;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g.push_back({-1.0 + 0.5 * i, -1.0 + 0.5 * j});
    return g;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

GraphCurve exp_curve(double offset = 0.0)
{
    return {"exp", [offset](double x) { return std::exp(x) + offset; }, [](double x) { return std::exp(x); },
            [](double x) { return std::exp(x); }};
}

FlowField field(const std::string& name, PointMap f) { return {name, std::move(f)}; }

double dist(const Point2& a, const Point2& b) { return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

} // namespace

TEST_CASE("generator examples")
{
    const auto scales = halving_scales();
    const auto g = grid5();
    SUBCASE("affine_exp gives (1, y)")
    {
        const auto r = infinitesimal_generator(builtin_family("affine_exp"), scales, g);
        for (const auto& s : r.samples) {
            CHECK(std::abs(s.value[0] - 1.0) <= 1e-10);
            CHECK(std::abs(s.value[1] - s.p[1]) <= 1e-10);
        }
        CHECK(r.max_error <= 1e-9);
    }
    SUBCASE("identity family")
    {
        const MapFamily id{"id", [](double, double x, double y) { return Point2{x, y}; }};
        const auto r = infinitesimal_generator(id, scales, g);
        for (const auto& s : r.samples) CHECK(dist(s.value, {0, 0}) == 0.0);
    }
    SUBCASE("contract gives (-x, -y)")
    {
        const auto r = infinitesimal_generator(builtin_family("contract"), scales, g);
        for (const auto& s : r.samples) CHECK(dist(s.value, {-s.p[0], -s.p[1]}) <= 1e-12);
    }
    SUBCASE("serial and parallel agree")
    {
        const auto a = infinitesimal_generator(builtin_family("affine_exp"), scales, g, false);
        const auto b = infinitesimal_generator(builtin_family("affine_exp"), scales, g, true);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(a.samples[i].value == b.samples[i].value);
            CHECK(a.samples[i].error == b.samples[i].error);
        }
    }
    SUBCASE("non-convergence")
    {
        const MapFamily rough{"sqrt", [](double t, double x, double y) { return Point2{x + std::sqrt(t), y}; }};
        CHECK_THROWS_AS(generator_at(rough, scales, {0.0, 0.0}), ConvergenceError);
    }
    SUBCASE("bad scales")
    {
        const std::vector<double> up{0.01, 0.02, 0.04};
        CHECK_THROWS_AS(infinitesimal_generator(builtin_family("translate"), up, g), DomainError);
        CHECK_THROWS_AS(halving_scales(0.1, 2), DomainError);
        CHECK_THROWS_AS(builtin_family("rotate"), DomainError);
    }
}

TEST_CASE("generator is additive under composition")
{
    const MapFamily a = builtin_family("affine_exp"), b = builtin_family("contract");
    const MapFamily ab{"composite", [a, b](double t, double x, double y) {
                           const Point2 q = b.map(t, x, y);
                           return a.map(t, q[0], q[1]);
                       },
                       0.5};
    const auto scales = halving_scales();
    for (const auto& p : grid5()) {
        const auto u = generator_at(a, scales, p), v = generator_at(b, scales, p), w = generator_at(ab, scales, p);
        const double tol = 10 * (u.error + v.error + w.error) + 1e-12;
        CHECK(dist(w.value, {u.value[0] + v.value[0], u.value[1] + v.value[1]}) <= tol);
    }
}

TEST_CASE("integrate_flow examples")
{
    SUBCASE("(1, y) from (0, 1)")
    {
        const auto tr = integrate_flow(field("(1,y)", [](double, double y) { return Point2{1.0, y}; }), {0, 1}, 1.0);
        for (std::size_t i = 0; i < tr.t.size(); ++i) CHECK(dist(tr.points[i], {tr.t[i], std::exp(tr.t[i])}) <= 1e-8);
        CHECK(tr.t.back() == 1.0);
        CHECK(tr.error_estimate <= 1e-10);
    }
    SUBCASE("zero field")
    {
        const auto tr = integrate_flow(field("0", [](double, double) { return Point2{0, 0}; }), {0.3, -2}, 5.0);
        for (const auto& p : tr.points) CHECK(p == Point2{0.3, -2});
    }
    SUBCASE("(-x, -y) for ln 2")
    {
        const auto tr = integrate_flow(field("-id", [](double x, double y) { return Point2{-x, -y}; }), {1, 1},
                                       std::log(2.0));
        CHECK(dist(tr.end(), {0.5, 0.5}) <= 1e-8);
    }
    SUBCASE("backwards in time")
    {
        const auto tr = integrate_flow(field("(1,y)", [](double, double y) { return Point2{1.0, y}; }), {0, 1}, -1.0);
        CHECK(dist(tr.end(), {-1.0, std::exp(-1.0)}) <= 1e-8);
    }
    SUBCASE("domain exit")
    {
        FlowField f = field("(1,0)", [](double, double) { return Point2{1, 0}; });
        f.domain.xhi = 0.5;
        CHECK_THROWS_AS(integrate_flow(f, {0, 0}, 1.0), DomainError);
    }
    SUBCASE("step underflow")
    {
        FlowOptions o;
        o.max_steps = 64;
        o.tol = 1e-15;
        CHECK_THROWS_AS(integrate_flow(field("y^2", [](double, double y) { return Point2{1, y * y}; }), {0, 1}, 0.9, o),
                        ConvergenceError);
    }
}

TEST_CASE("flow semigroup")
{
    const FlowField f = field("rot+", [](double x, double y) { return Point2{-y + 0.1 * x, x + 0.2 * std::sin(y)}; });
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 0.8);
    for (int i = 0; i < 10; ++i) {
        const double s = u(rng), t = u(rng);
        const Point2 p0{u(rng), u(rng)};
        const Point2 direct = integrate_flow(f, p0, s + t).end();
        const Point2 split = integrate_flow(f, integrate_flow(f, p0, s).end(), t).end();
        CHECK(dist(direct, split) <= 1e-9);
    }
}

TEST_CASE("generator and flow round trip")
{
    const auto scales = halving_scales();
    for (const auto& name : builtin_family_names()) {
        const MapFamily fam = builtin_family(name);
        const auto gen = infinitesimal_generator(fam, scales, std::vector<Point2>{});
        for (const Point2 p0 : {Point2{0.0, 1.0}, Point2{0.5, -0.7}, Point2{-1.0, 0.25}})
            for (double t : {0.1, 0.3, 0.5}) {
                FlowOptions o;
                o.samples = 2;
                o.tol = 1e-9;
                const Point2 flowed = integrate_flow(gen.field, p0, t, o).end();
                if (name == "contract") {
                    // not a one-parameter group: its generator's flow is exp(-t) Id
                    CHECK(dist(flowed, {std::exp(-t) * p0[0], std::exp(-t) * p0[1]}) <= 1e-6);
                    if (t == 0.5 && p0[1] == 1.0) CHECK(dist(flowed, fam.map(t, p0[0], p0[1])) > 0.1);
                } else {
                    CHECK(dist(flowed, fam.map(t, p0[0], p0[1])) <= 1e-6);
                }
            }
    }
}

TEST_CASE("invariance residual")
{
    const auto xs = linspace(-2, 2, 41);
    CHECK(invariance_residual(exp_curve(), builtin_family("affine_exp").at(0.3), xs) <= 1e-14 * std::exp(2.3));
    const GraphCurve line{"-2x", [](double x) { return -2 * x; }, [](double) { return -2.0; }, {}};
    CHECK(invariance_residual(line, [](double x, double y) { return Point2{x / 2, y + x}; }, xs) == 0.0);
    const GraphCurve parabola{"x^2", [](double x) { return x * x; }, [](double x) { return 2 * x; }, {}};
    CHECK(invariance_residual(parabola, [](double x, double y) { return Point2{x + 0.1, y}; }, xs) > 0.1);
    CHECK(invariance_residual(parabola, [](double x, double y) { return Point2{x, y}; }, xs) == 0.0);
    GraphCurve bounded = parabola;
    bounded.hi = 2.0;
    CHECK_THROWS_AS(invariance_residual(bounded, [](double x, double y) { return Point2{x + 0.1, y}; }, xs), DomainError);
    CHECK(invariance_residuals(parabola, [](double x, double y) { return Point2{x + 0.1, y}; }, xs, true) ==
          invariance_residuals(parabola, [](double x, double y) { return Point2{x + 0.1, y}; }, xs, false));
}

TEST_CASE("flow matches curve")
{
    const auto ts = linspace(0, 1, 11);
    const FlowField aff = field("(1,y)", [](double, double y) { return Point2{1.0, y}; });
    CHECK(flow_matches_curve(aff, exp_curve(), {0, 1}, ts) <= 1e-8);
    const GraphCurve zero{"0", [](double) { return 0.0; }, [](double) { return 0.0; }, {}};
    CHECK(flow_matches_curve(field("(1,0)", [](double, double) { return Point2{1, 0}; }), zero, {0, 0}, ts) == 0.0);
    // distance to e^x + 0.01 stays at 0.01 along the true flow line
    for (double t : ts) CHECK(flow_matches_curve(aff, exp_curve(0.01), {0, 1}, std::vector<double>{t}) >= 0.009);
}

TEST_CASE("difference quotient harness")
{
    const std::vector<double> ts{0.1, 0.2};
    SUBCASE("rational f")
    {
        const auto s = difference_quotient_harness([](double x) { return 1 / (1 - x); }, -0.5, 0.5, ts, 0.0);
        for (const auto& q : s) {
            CHECK(q.consistent);
            for (double r : q.inverse_radius) {
                CHECK(std::isfinite(r));
                // nearest singularity of g_t is at 1 - t
                // |c_n|^{1/n} <= (1 - t)^{-1 - 1/n} for n >= degree / 2
                CHECK(r <= std::pow(1 - q.t, -1.0 - 2.0 / q.degree) + 1e-9);
                CHECK(r >= 0.9);
            }
            // c_n = (1 - t)^{-n-1} - 1
            for (int n = 0; n <= 6; ++n)
                CHECK(q.coefficients[n] == doctest::Approx(std::pow(1 - q.t, -n - 1) - 1).epsilon(1e-6));
        }
    }
    SUBCASE("linear f")
    {
        const auto s = difference_quotient_harness([](double x) { return 3 * x + 1; }, -1, 1, ts, 0.0);
        for (const auto& q : s) {
            CHECK(q.consistent);
            for (double r : q.inverse_radius) CHECK(r == 0.0);
            CHECK(q.coefficients[0] == doctest::Approx(3 * q.t));
        }
    }
    SUBCASE("lacunary cosine sum")
    {
        const RealMap w = [](double x) {
            double s = 0.0;
            for (int k = 0; k < 20; ++k) s += std::ldexp(1.0, -k) * std::cos(std::ldexp(1.0, 2 * k) * x);
            return s;
        };
        const std::vector<double> t1{0.1};
        for (int d : {8, 12, 16}) {
            QuotientProbeOptions o;
            o.degree = d;
            const auto s = difference_quotient_harness(w, -1, 1, t1, 0.0, o);
            CHECK_FALSE(s[0].consistent);
        }
    }
    SUBCASE("probe outside the interval")
    {
        CHECK_THROWS_AS(difference_quotient_harness([](double x) { return x; }, -0.5, 0.5, std::vector<double>{0.4}, 0.0),
                        DomainError);
    }
}
