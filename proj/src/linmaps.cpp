#include "homog/linmaps.hpp"

#include <cmath>

namespace homog {

std::string to_string(LinKind k)
{
    switch (k) {
    case LinKind::diagonal_real: return "diagonal_real";
    case LinKind::jordan_block: return "jordan_block";
    case LinKind::complex_pair: return "complex_pair";
    }
    return "unknown";
}

double derivative_transfer_residual(double l1, double l2, int k, const RealMap& fk, std::span<const double> grid)
{
    const double factor = l2 / std::pow(l1, k);
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::abs(fk(l1 * x) - factor * fk(x)));
    return worst;
}

JordanResiduals jordan_residuals(double lambda, const GraphCurve& f, std::span<const double> grid,
                                 std::span<const int> js)
{
    if (lambda == 0.0) throw DomainError("Jordan block needs lambda != 0");
    if (!js.empty() && lambda != 1.0) throw DomainError("f(x + j f(x)) = f(x) only applies for lambda = 1");
    JordanResiduals out;
    out.js.assign(js.begin(), js.end());
    out.inveq1.resize(js.size());
    for (double x : grid) {
        const double fx = f.f(x);
        const double slope = lambda + f.df(x);
        if (std::abs(slope) <= 1e-14)
            throw DomainError("lambda + f'(x) vanishes at x = " + std::to_string(x));
        const double amp = lambda * lambda / (slope * slope * slope);
        const double moved = lambda * x + fx;
        out.x.push_back(x);
        out.inveq.push_back(f.f(moved) - lambda * fx);
        out.replace.push_back(f.d2f(moved) - f.d2f(x) * amp);
        out.amplification.push_back(amp);
        for (std::size_t i = 0; i < js.size(); ++i) out.inveq1[i].push_back(f.f(x + js[i] * fx) - fx);
    }
    return out;
}

std::vector<double> jordan_sequence(double x0, const RealMap& f, std::span<const double> x_primes)
{
    std::vector<double> out;
    for (double xp : x_primes) {
        const double fp = f(xp);
        if (fp == 0.0) throw DomainError("jordan sequence needs f(x'_j) != 0");
        out.push_back(xp + std::floor((x0 - xp) / fp) * fp);
    }
    return out;
}

WeakRegularityExample weak_regularity_example(const Rational& l1, const Rational& l2)
{
    if (!(l1 > 0 && l1 < 1)) throw DomainError("weak regularity example needs 0 < lambda1 < 1");
    if (!(l2 > 0 && l2 < 1)) throw DomainError("weak regularity example needs 0 < lambda2 < 1");
    // floor(alpha) = max m with l1^m >= l2; alpha is an integer iff equality holds
    int m = 0;
    Rational p(1);
    while (true) {
        Rational next = p * l1;
        if (next < l2) break;
        p = next;
        ++m;
    }
    if (p == l2)
        throw DomainError("alpha = " + std::to_string(m) + " is an integer: the curve x^" + std::to_string(m)
                          + " is analytic");
    const double alpha = std::log(l2.get_d()) / std::log(l1.get_d());
    return {alpha, m, [alpha](double x) { return std::pow(std::abs(x), alpha); }};
}

} // namespace homog
