#include "doctest.h"
#include "support.hpp"

#include "homog/linmaps.hpp"
#include "homog/shears.hpp"

#include <cmath>

using namespace homog;
using namespace homog::test;

namespace {

LinMap2<Q> mat(Q a, Q b, Q c, Q d) { return LinMap2<Q>{{{{a, b}, {c, d}}}}; }

// A v = lambda v for each basis column.
bool basis_ok(const LinMap2<Q>& a, const LinClassification<Q>& c)
{
    const auto& B = *c.exact_basis;
    for (int col = 0; col < 2; ++col) {
        Q v0 = B[0][col], v1 = B[1][col];
        Q lam = (*c.exact)[col];
        Q r0 = a.m[0][0] * v0 + a.m[0][1] * v1 - lam * v0;
        Q r1 = a.m[1][0] * v0 + a.m[1][1] * v1 - lam * v1;
        if (c.kind == LinKind::jordan_block && col == 1) {
            r0 -= B[0][0];
            r1 -= B[1][0];
        }
        if (r0 != 0 || r1 != 0) return false;
    }
    return B[0][0] * B[1][1] - B[0][1] * B[1][0] != 0;
}

} // namespace

TEST_CASE("classification")
{
    auto d = classify(mat(q(1, 2), 0, 0, q(1, 8)));
    CHECK(d.kind == LinKind::diagonal_real);
    CHECK((*d.exact)[0] == q(1, 8));
    CHECK((*d.exact)[1] == q(1, 2));
    auto j = classify(mat(1, 1, 0, 1));
    CHECK(j.kind == LinKind::jordan_block);
    CHECK(basis_ok(mat(1, 1, 0, 1), j));
    auto r = classify(mat(0, -1, 1, 0));
    CHECK(r.kind == LinKind::complex_pair);
    CHECK(r.eig_imag[1] == doctest::Approx(1.0));
    auto irr = classify(mat(1, 1, 1, 0));
    CHECK(irr.kind == LinKind::diagonal_real);
    CHECK_FALSE(irr.exact);
    CHECK(irr.eig[1] == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    CHECK(classify(mat(3, 0, 0, 3)).scalar);
    CHECK_THROWS_AS(classify(mat(1, 2, 2, 4)), DomainError);

    auto fd = classify(LinMap2<double>{{{{2.0, 1.0}, {0.0, 2.0}}}});
    CHECK(fd.kind == LinKind::jordan_block);
}

TEST_CASE("classification is conjugation covariant")
{
    std::mt19937_64 rng(23);
    const LinMap2<Q> samples[] = {mat(q(1, 2), 0, 0, q(1, 8)), mat(2, 1, 0, 2), mat(0, -1, 1, 0), mat(1, 3, 2, -1)};
    for (const auto& a : samples) {
        auto base = classify(a);
        for (int t = 0; t < 10; ++t) {
            LinMap2<Q> b = mat(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
            if (b.det() == 0) continue;
            LinMap2<Q> c = b * a * b.inverse();
            auto cc = classify(c);
            CHECK(cc.kind == base.kind);
            CHECK(cc.exact.has_value() == base.exact.has_value());
            if (base.exact) CHECK(*cc.exact == *base.exact);
            if (cc.exact_basis) CHECK(basis_ok(c, cc));
            CHECK(cc.eig[0] == doctest::Approx(base.eig[0]));
        }
    }
}

TEST_CASE("diagonal resonance")
{
    auto a = diagonal_invariant_solutions(q(1, 2), q(1, 8), 12);
    REQUIRE(a.exponents == std::vector<int>{3});
    CHECK(a.basis[0] == Jet<Q>::monomial(Q(1), 3, 12));
    CHECK(diagonal_invariant_solutions(q(1, 2), q(1, 3), 12).exponents.empty());
    CHECK(diagonal_invariant_solutions(q(1, 2), q(1, 2), 12).exponents == std::vector<int>{1});

    // resonance on the original pair, not the squared one
    auto neg = diagonal_invariant_solutions(q(-1, 2), q(-1, 4), 12);
    CHECK(neg.exponents.empty());
    CHECK(neg.normalized.reductions == std::vector<Reduction>{Reduction::squared});
    auto big = diagonal_invariant_solutions(q(-2), q(4), 12);
    CHECK(big.exponents == std::vector<int>{2});
    CHECK(big.normalized.l1 == q(1, 4));
    CHECK(big.normalized.l2 == q(1, 16));
    CHECK(big.normalized.reductions.size() == 2);
    CHECK(diagonal_invariant_solutions(q(-1), q(1), 6).exponents == std::vector<int>{2, 4, 6});

    // the returned monomials solve the equation exactly
    for (const auto& [l1, l2] : {std::pair{q(2, 3), q(16, 81)}, std::pair{q(-3), q(-27)}}) {
        auto s = diagonal_invariant_solutions(l1, l2, 10);
        REQUIRE(s.basis.size() == 1);
        const Jet<Q>& f = s.basis[0];
        CHECK(compose(f, Jet<Q>::monomial(l1, 1, 10)) == l2 * f);
    }
    auto fl = diagonal_invariant_solutions(0.5, 0.125, 8);
    CHECK(fl.exponents == std::vector<int>{3});
    CHECK_FALSE(fl.exact);
}

TEST_CASE("rigidity degree")
{
    CHECK(rigidity_degree(q(1, 2), q(1, 3)).k_min == 2);
    CHECK(rigidity_degree(q(1, 2), q(1, 3)).degree_bound == 1);
    CHECK(rigidity_degree(q(1, 2), q(1, 5)).k_min == 3);
    CHECK(rigidity_degree(q(1, 2), q(7, 8)).k_min == 1);
    CHECK(rigidity_degree(q(1, 2), q(7, 8)).degree_bound == 0);
    // 7/8 is not a power of 1/2, so no monomial solution either
    CHECK(diagonal_invariant_solutions(q(1, 2), q(7, 8), 20).exponents.empty());
    CHECK_THROWS_AS(rigidity_degree(q(2), q(1)), DomainError);

    // derivative transfer for f = x^3 under (1/2, 1/8): f'' = 6x, factor (1/8)/(1/4)
    std::vector<double> grid{-0.5, -0.1, 0.2, 0.7};
    CHECK(derivative_transfer_residual(0.5, 0.125, 2, [](double x) { return 6 * x; }, grid) < 1e-15);
}

TEST_CASE("Jordan residuals")
{
    GraphCurve zero{"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
    std::vector<double> grid{-0.3, -0.1, 0.05, 0.2};
    std::vector<int> js{1, 2, -3};
    for (double lam : {0.5, 1.0, 3.0}) {
        auto r = jordan_residuals(lam, zero, grid, lam == 1.0 ? std::span<const int>(js) : std::span<const int>());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(r.inveq[i] == 0.0);
            CHECK(r.replace[i] == 0.0);
        }
        for (const auto& row : r.inveq1)
            for (double v : row) CHECK(v == 0.0);
    }
    GraphCurve sq{"x^2", [](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; }};
    auto r = jordan_residuals(1.0, sq, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        CHECK(r.inveq[i] == doctest::Approx((x + x * x) * (x + x * x) - x * x));
        CHECK(r.inveq[i] != 0.0);
    }
    auto amp = jordan_residuals(0.5, zero, std::vector<double>{0.0});
    CHECK(amp.amplification[0] == doctest::Approx(2.0));
    GraphCurve steep{"", [](double x) { return -x; }, [](double) { return -1.0; }, [](double) { return 0.0; }};
    CHECK_THROWS_AS(jordan_residuals(1.0, steep, grid), DomainError);
    CHECK_THROWS_AS(jordan_residuals(0.5, zero, grid, js), DomainError);
}

TEST_CASE("Jordan sequence approaches x0")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const RealMap samplers[] = {[](double x) { return x * x * std::sin(1 / (x + 1e-300)); },
                                [](double x) { return x * x * x + 0.1 * x * x; }, [](double x) { return -x * x; }};
    for (const auto& f : samplers) {
        std::vector<double> xp;
        for (int j = 1; j <= 40; ++j) xp.push_back(0.3 / j * (j % 2 ? 1 : -1));
        for (int t = 0; t < 5; ++t) {
            const double x0 = u(rng);
            auto xs = jordan_sequence(x0, f, xp);
            for (std::size_t j = 0; j < xs.size(); ++j)
                CHECK(std::abs(x0 - xs[j]) <= std::abs(f(xp[j])) * (1 + 1e-12));
        }
    }
}

TEST_CASE("weak regularity example")
{
    auto w = weak_regularity_example(q(1, 2), q(1, 5));
    CHECK(w.alpha == doctest::Approx(std::log(5.0) / std::log(2.0)));
    CHECK(w.smoothness_class == 2);
    double worst = 0;
    for (int i = -1000; i <= 1000; ++i) {
        const double x = i / 1000.0;
        worst = std::max(worst, std::abs(w.sampler(0.5 * x) - 0.2 * w.sampler(x)));
    }
    CHECK(worst <= 1e-13);
    // f(0) = 0 exactly, so tiny steps lose no precision; h^{0.32} decay needs them
    std::vector<double> grid;
    for (int e = 2; e <= 40; e += 2) grid.push_back(std::pow(10.0, -e));
    CHECK(regularity_probe(w.sampler, 0.0, grid, 2, 1e-3).stable);
    CHECK_FALSE(regularity_probe(w.sampler, 0.0, grid, 3, 1e-3).stable);
    CHECK_THROWS_AS(weak_regularity_example(q(1, 2), q(1, 4)), DomainError);
    CHECK(weak_regularity_example(q(1, 3), q(1, 10)).smoothness_class == 2);
}
