#include "homog/cartan.hpp"

#include "homog/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace homog {

MapFamily builtin_family(const std::string& name)
{
    if (name == "affine_exp")
        return {name, [](double t, double x, double y) { return Point2{x + t, std::exp(t) * y}; }, 1.0};
    if (name == "translate") return {name, [](double t, double x, double y) { return Point2{x + t, y}; }, 1.0};
    if (name == "contract")
        return {name, [](double t, double x, double y) { return Point2{(1 - t) * x, (1 - t) * y}; }, 0.5};
    if (name == "contract_exp")
        return {name, [](double t, double x, double y) { return Point2{std::exp(-t) * x, std::exp(-t) * y}; }, 1.0};
    throw DomainError("unknown map family: " + name);
}

std::vector<std::string> builtin_family_names() { return {"affine_exp", "translate", "contract", "contract_exp"}; }

std::vector<double> halving_scales(double t0, int levels)
{
    if (!(t0 > 0) || levels < 3) throw DomainError("need t0 > 0 and at least three scales");
    std::vector<double> ts;
    for (int i = 0; i < levels; ++i) ts.push_back(std::ldexp(t0, -i));
    return ts;
}

namespace {

// Value at 0 of the interpolating polynomial through (t[i], v[i]).
double neville(std::span<const double> t, std::vector<double> v)
{
    const std::size_t n = t.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i) v[i] = (t[i + m] * v[i] - t[i] * v[i + 1]) / (t[i + m] - t[i]);
    return v[0];
}

void check_scales(const MapFamily& fam, std::span<const double> ts)
{
    if (ts.size() < 3) throw DomainError("generator extraction needs at least three scales");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 0) || ts[i] > fam.t_max) throw DomainError("scale outside (0, t_max] for family " + fam.name);
        if (i > 0 && !(ts[i] < ts[i - 1])) throw DomainError("scales must decrease strictly");
    }
}

} // namespace

GeneratorValue generator_at(const MapFamily& fam, std::span<const double> ts, const Point2& p)
{
    check_scales(fam, ts);
    if (!fam.domain.contains(p)) throw DomainError("point outside the family's common domain");
    const std::size_t n = ts.size();
    std::vector<double> d[2] = {std::vector<double>(n), std::vector<double>(n)};
    double size = 1.0 + std::abs(p[0]) + std::abs(p[1]);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 s = fam.map(ts[i], p[0], p[1]);
        if (!std::isfinite(s[0]) || !std::isfinite(s[1])) throw DomainError("family map is not finite");
        size = std::max(size, 1.0 + std::abs(s[0]) + std::abs(s[1]));
        for (int c = 0; c < 2; ++c) d[c][i] = (s[c] - p[c]) / ts[i];
    }
    const double floor = 64 * std::numeric_limits<double>::epsilon() * size / ts.back();
    // P3 over scales (i-2, i-1, i); the error at level i is |P3_i - P3_{i-1}|
    // (|P3 - P2| when only three scales are given).
    auto p3 = [&](std::size_t i, int c) {
        return neville(ts.subspan(i - 2, 3), std::vector<double>(d[c].begin() + i - 2, d[c].begin() + i + 1));
    };
    Point2 value{};
    double err = 0.0, prev = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 2; ++c) value[c] = p3(n - 1, c);
    if (n == 3) {
        for (int c = 0; c < 2; ++c)
            err = std::max(err, std::abs(value[c] - neville(ts.subspan(1, 2), std::vector<double>(d[c].begin() + 1, d[c].end()))));
    } else {
        for (std::size_t i = 3; i < n; ++i) {
            double e = 0.0;
            for (int c = 0; c < 2; ++c) e = std::max(e, std::abs(p3(i, c) - p3(i - 1, c)));
            if (i + 1 < n) prev = e;
            else err = e;
        }
    }
    if (!std::isfinite(err) || (err > floor && n > 4 && err >= prev)) {
        std::ostringstream os;
        os << "generator extrapolation is not converging at (" << p[0] << ", " << p[1] << "): error " << err
           << " after " << prev;
        throw ConvergenceError(os.str());
    }
    return {value, err};
}

GeneratorResult infinitesimal_generator(const MapFamily& fam, std::span<const double> ts, std::span<const Point2> grid,
                                        bool parallel)
{
    check_scales(fam, ts);
    GeneratorResult out;
    out.t_seq.assign(ts.begin(), ts.end());
    out.field = {"generator of " + fam.name,
                 [fam, scales = out.t_seq](double x, double y) { return generator_at(fam, scales, {x, y}).value; },
                 fam.domain};
    out.samples.resize(grid.size());
    detail::for_each_index(static_cast<long>(grid.size()), parallel, [&](long i) {
        const auto g = generator_at(fam, ts, grid[i]);
        out.samples[i] = {grid[i], g.value, g.error};
    });
    for (const auto& s : out.samples) out.max_error = std::max(out.max_error, s.error);
    return out;
}

namespace {

Point2 eval_field(const FlowField& vf, const Point2& p, double t)
{
    if (!vf.domain.contains(p)) {
        std::ostringstream os;
        os << "trajectory left the domain at t = " << t << ", point (" << p[0] << ", " << p[1] << ")";
        throw DomainError(os.str());
    }
    const Point2 v = vf.field(p[0], p[1]);
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw DomainError("vector field is not finite");
    return v;
}

Trajectory rk4(const FlowField& vf, const Point2& p0, double t, int steps, int samples)
{
    Trajectory tr;
    tr.steps = steps;
    const double h = t / steps;
    const int every = steps / samples;
    Point2 y = p0;
    tr.t.push_back(0.0);
    tr.points.push_back(y);
    auto add = [](const Point2& a, const Point2& b, double s) { return Point2{a[0] + s * b[0], a[1] + s * b[1]}; };
    for (int i = 0; i < steps; ++i) {
        const double ti = i * h;
        const Point2 k1 = eval_field(vf, y, ti);
        const Point2 k2 = eval_field(vf, add(y, k1, h / 2), ti + h / 2);
        const Point2 k3 = eval_field(vf, add(y, k2, h / 2), ti + h / 2);
        const Point2 k4 = eval_field(vf, add(y, k3, h), ti + h);
        for (int c = 0; c < 2; ++c) y[c] += h / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
        if ((i + 1) % every == 0) {
            tr.t.push_back((i + 1) * h);
            tr.points.push_back(y);
        }
    }
    return tr;
}

} // namespace

Trajectory integrate_flow(const FlowField& vf, const Point2& p0, double t, const FlowOptions& opts)
{
    if (opts.samples < 1 || !(opts.tol > 0)) throw DomainError("flow options need samples >= 1 and tol > 0");
    if (!std::isfinite(t)) throw DomainError("flow time must be finite");
    eval_field(vf, p0, 0.0);
    if (t == 0.0) {
        Trajectory tr;
        tr.t = {0.0};
        tr.points = {p0};
        return tr;
    }
    int n = opts.samples;
    Trajectory coarse = rk4(vf, p0, t, n, opts.samples);
    while (true) {
        if (2L * n > opts.max_steps) {
            std::ostringstream os;
            os << "step underflow: " << 2L * n << " steps exceed the budget of " << opts.max_steps;
            throw ConvergenceError(os.str());
        }
        Trajectory fine = rk4(vf, p0, t, 2 * n, opts.samples);
        double diff = 0.0;
        for (std::size_t i = 0; i < fine.points.size(); ++i)
            for (int c = 0; c < 2; ++c) diff = std::max(diff, std::abs(fine.points[i][c] - coarse.points[i][c]));
        fine.error_estimate = diff;
        if (diff <= opts.tol) return fine;
        coarse = std::move(fine);
        n *= 2;
    }
}

std::vector<double> invariance_residuals(const GraphCurve& c, const PointMap& psi, std::span<const double> xs,
                                         bool parallel)
{
    std::vector<double> out(xs.size());
    detail::for_each_index(static_cast<long>(xs.size()), parallel, [&](long i) {
        const double x = xs[i];
        if (!c.contains(x)) throw DomainError("grid point outside the curve's domain");
        const Point2 q = psi(x, c.f(x));
        if (!c.contains(q[0])) {
            std::ostringstream os;
            os << "image x = " << q[0] << " leaves the domain of " << c.name;
            throw DomainError(os.str());
        }
        out[i] = std::abs(q[1] - c.f(q[0]));
    });
    return out;
}

double invariance_residual(const GraphCurve& c, const PointMap& psi, std::span<const double> xs)
{
    const auto r = invariance_residuals(c, psi, xs);
    return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

double flow_matches_curve(const FlowField& vf, const GraphCurve& c, const Point2& p0, std::span<const double> t_grid,
                          const FlowOptions& opts)
{
    double worst = 0.0;
    for (double t : t_grid) {
        const Point2 q = integrate_flow(vf, p0, t, opts).end();
        if (!c.contains(q[0])) throw DomainError("flow left the curve's domain");
        worst = std::max(worst, std::abs(q[1] - c.f(q[0])));
    }
    return worst;
}

namespace {

// Power-basis coefficients of T_0 .. T_{n-1}.
std::vector<std::vector<double>> chebyshev_power_table(int n)
{
    std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
    T[0][0] = 1;
    if (n > 1) T[1][1] = 1;
    for (int k = 2; k < n; ++k)
        for (int j = 0; j < n; ++j) T[k][j] = (j > 0 ? 2 * T[k - 1][j - 1] : 0.0) - T[k - 2][j];
    return T;
}

// Taylor coefficients at x0 of g on [x0 - r, x0 + r]; entries below the
// rounding floor are set to zero.
std::vector<double> taylor_estimate(const RealMap& g, double x0, double r, int degree)
{
    const int n = degree + 9;
    std::vector<double> vals(n);
    double gmax = 0.0;
    for (int j = 0; j < n; ++j) {
        vals[j] = g(x0 + r * std::cos(std::numbers::pi * (j + 0.5) / n));
        gmax = std::max(gmax, std::abs(vals[j]));
    }
    std::vector<double> a(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += vals[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
        a[k] = (k == 0 ? 1.0 : 2.0) * s / n;
    }
    const auto T = chebyshev_power_table(n);
    std::vector<double> c(degree + 1, 0.0);
    for (int m = 0; m <= degree; ++m) {
        double b = 0.0, bound = 0.0;
        for (int k = m; k < n; ++k) {
            b += a[k] * T[k][m];
            bound += std::abs(T[k][m]);
        }
        const double noise = 16 * n * std::numeric_limits<double>::epsilon() * std::max(gmax, 1e-300) * bound;
        c[m] = std::abs(b) <= noise ? 0.0 : b / std::pow(r, m);
    }
    return c;
}

double inverse_radius(const std::vector<double>& c, int degree)
{
    double best = 0.0;
    for (int m = std::max(1, degree / 2); m <= degree; ++m)
        if (c[m] != 0.0) best = std::max(best, std::pow(std::abs(c[m]), 1.0 / m));
    return best;
}

} // namespace

std::vector<QuotientScore> difference_quotient_harness(const RealMap& f, double lo, double hi,
                                                       std::span<const double> ts, double x0,
                                                       const QuotientProbeOptions& opts)
{
    if (opts.degree < 2 || opts.radii.empty()) throw DomainError("probe needs degree >= 2 and at least one radius");
    double rmax = 0.0;
    for (double r : opts.radii) {
        if (!(r > 0)) throw DomainError("probe radii must be positive");
        rmax = std::max(rmax, r);
    }
    std::vector<QuotientScore> out;
    for (double t : ts) {
        if (x0 - rmax < lo || x0 + rmax > hi || x0 + t - rmax < lo || x0 + t + rmax > hi) {
            std::ostringstream os;
            os << "probe outside [" << lo << ", " << hi << "] for t = " << t;
            throw DomainError(os.str());
        }
        const RealMap g = [&f, t](double x) { return f(x + t) - f(x); };
        QuotientScore s{t, opts.degree, opts.radii, {}, {}, true};
        for (double r : opts.radii) {
            const auto c = taylor_estimate(g, x0, r, opts.degree);
            if (s.coefficients.empty()) s.coefficients = c;
            s.inverse_radius.push_back(inverse_radius(c, opts.degree));
        }
        const auto [mn, mx] = std::minmax_element(s.inverse_radius.begin(), s.inverse_radius.end());
        const bool finite = std::all_of(s.inverse_radius.begin(), s.inverse_radius.end(),
                                        [](double v) { return std::isfinite(v); });
        const bool agree = *mx <= 1.5 * *mn || *mx <= 1e-3;
        s.consistent = finite && agree && *mx <= 0.5 / rmax;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace homog
