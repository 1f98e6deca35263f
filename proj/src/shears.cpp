#include "homog/kernels.hpp"
#include "homog/shears.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace homog {

std::string to_string(SumStatus s)
{
    switch (s) {
    case SumStatus::converged: return "converged";
    case SumStatus::divergent: return "divergent";
    case SumStatus::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

namespace {

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x)
    {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

[[noreturn]] void basin_error(double x0, long j)
{
    throw DomainError("x0 = " + std::to_string(x0) + " is outside the attracting basin (orbit escaped at step "
                      + std::to_string(j) + ")");
}

NumericCurveResult sum_hyperbolic(const RealShear& s, double x0, const NumericCurveOptions& opts)
{
    NumericCurveResult out;
    const double r = std::abs(s.lambda);
    if (!(r < 1.0) || r == 0.0) throw DomainError("orbit summation needs 0 < |lambda| < 1 (reduce the shear first)");
    Kahan sum;
    double x = x0;
    double prev = 0.0;
    const double escape = 4.0 * std::abs(x0);
    for (long j = 0; j < opts.j_max; ++j) {
        const double t = s.additive(x);
        if (!std::isfinite(t) || std::abs(x) > escape) basin_error(x0, j);
        sum.add(t);
        out.terms = j + 1;
        const double next = s.base(x);
        const double q = j > 0 && prev != 0.0 ? std::abs(t) / std::abs(prev) : 1.0;
        const double rr = std::max(r, q);
        if (next == 0.0 || (j > 0 && rr < 1.0)) {
            const double tail = next == 0.0 ? 0.0 : std::max(std::abs(t), std::abs(prev)) * rr / (1.0 - rr);
            if (tail < opts.tol) {
                out.value = -sum.sum;
                out.tail_estimate = tail;
                out.status = SumStatus::converged;
                return out;
            }
        }
        prev = t;
        x = next;
    }
    out.value = -sum.sum;
    out.status = SumStatus::budget_exhausted;
    return out;
}

// Richardson extrapolation of partial sums S_J, J doubling, with error terms
// J^{-i/k}. Returns (estimate, error estimate).
std::pair<double, double> richardson(std::span<const double> partial, int k)
{
    const int L = static_cast<int>(partial.size());
    std::vector<std::vector<double>> t(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
        t[i].push_back(partial[i]);
        for (int j = 1; j <= i; ++j) {
            const double f = std::pow(2.0, static_cast<double>(j) / k) - 1.0;
            t[i].push_back(t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / f);
        }
    }
    const double best = t[L - 1][L - 1];
    const double err = std::max(std::abs(best - t[L - 1][L - 2]), std::abs(best - t[L - 2][L - 2]));
    return {best, err};
}

NumericCurveResult sum_parabolic(const RealShear& s, double x0, const NumericCurveOptions& opts)
{
    NumericCurveResult out;
    const int k = s.k;
    const double xk0 = std::pow(x0, k);
    RealMap h = s.base;
    RealMap g = s.additive;
    if (!(s.lead * xk0 < 0.0)) {
        if (!(-s.lead * xk0 < 0.0)) throw DomainError("x0 is not on an attracting side of the base or its inverse");
        h = s.base_inverse;
        g = [a = s.additive, hi = s.base_inverse](double x) { return -a(hi(x)); };
        out.inverse_side = true;
    }

    const double threshold = -1.0 - 1.0 / (2.0 * k);
    const double asym_level = std::abs(xk0) / 8.0;
    const int window = std::max(1, opts.window);
    const int max_levels = 6;
    std::vector<double> ring(static_cast<std::size_t>(window), 0.0);
    std::size_t slot = 0;
    std::vector<double> partial;
    double prev_mean = -1.0;
    double prev_est = 0.0;
    bool have_est = false;
    int div_run = 0;
    long next_cp = 64;
    Kahan sum;
    double x = x0;
    const double escape = 2.0 * std::abs(x0);

    for (long j = 0; j < opts.j_max; ++j) {
        const double t = g(x);
        if (!std::isfinite(t)) basin_error(x0, j);
        sum.add(t);
        ring[slot] = std::abs(t);
        if (++slot == ring.size()) slot = 0;
        x = h(x);
        out.terms = j + 1;
        if (!std::isfinite(x) || std::abs(x) > escape) basin_error(x0, j + 1);
        if (x == 0.0) {
            out.value = -sum.sum;
            out.status = SumStatus::converged;
            return out;
        }
        if (j + 1 != next_cp) continue;
        next_cp *= 2;
        if (std::abs(std::pow(x, k)) > asym_level) continue;

        double mean = 0.0;
        for (double v : ring) mean += v;
        mean /= window;
        if (prev_mean > 0.0 && mean > 0.0) {
            out.term_slope = std::log(mean / prev_mean) / std::log(2.0);
            div_run = out.term_slope > threshold ? div_run + 1 : 0;
        }
        prev_mean = mean;

        partial.push_back(sum.sum);
        if (partial.size() > static_cast<std::size_t>(max_levels)) partial.erase(partial.begin());
        if (partial.size() >= 3) {
            auto [est, err] = richardson(partial, k);
            if (have_est) err = std::max(err, std::abs(est - prev_est));
            prev_est = est;
            have_est = true;
            out.value = -est;
            out.tail_estimate = err;
            if (err < opts.tol && div_run == 0) {
                out.status = SumStatus::converged;
                return out;
            }
        }
        if (div_run >= 2) {
            out.value = -sum.sum;
            out.status = SumStatus::divergent;
            return out;
        }
    }
    if (!have_est) out.value = -sum.sum;
    out.status = div_run >= 1 ? SumStatus::divergent : SumStatus::budget_exhausted;
    return out;
}

} // namespace

NumericCurveResult numeric_invariant_curve(const RealShear& s, double x0, const NumericCurveOptions& opts)
{
    NumericCurveResult out;
    if (x0 == 0.0) {
        out.status = SumStatus::converged;
    } else if (s.k > 0) {
        out = sum_parabolic(s, x0, opts);
    } else {
        out = sum_hyperbolic(s, x0, opts);
    }
    out.closed_form_used = s.closed_form_used;
    return out;
}

namespace {

double binomial(int n, int r)
{
    double b = 1.0;
    for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
}

double spread(const std::vector<ProbeRow>& rows, double ProbeRow::*field)
{
    const std::size_t n = rows.size();
    const std::size_t from = n >= 3 ? n - 3 : 0;
    double lo = rows[from].*field, hi = lo;
    for (std::size_t i = from; i < n; ++i) {
        lo = std::min(lo, rows[i].*field);
        hi = std::max(hi, rows[i].*field);
    }
    return std::isfinite(hi - lo) ? hi - lo : std::numeric_limits<double>::infinity();
}

} // namespace

ProbeResult regularity_probe(const RealMap& f, double x, std::span<const double> h_grid, int d, double tol)
{
    if (d < 0) throw DomainError("difference degree must be nonnegative");
    if (h_grid.empty()) throw DomainError("regularity probe needs a nonempty step grid");
    for (double h : h_grid)
        if (!(h > 0.0)) throw DomainError("regularity probe steps must be positive");

    // every distinct abscissa, sampled once
    std::map<double, double> values;
    for (double h : h_grid) {
        for (int i = 0; i <= d; ++i) {
            values[x + (0.5 * d - i) * h] = 0.0;
            values[x + i * h] = 0.0;
            values[x - i * h] = 0.0;
        }
    }
    std::vector<double> xs;
    for (const auto& kv : values) xs.push_back(kv.first);
    std::vector<double> ys;
    try {
        ys = kernels::sample(f, xs);
    } catch (const ConvergenceError&) {
        throw;
    } catch (const std::exception& e) {
        throw DomainError(std::string("sampler failed inside the regularity probe: ") + e.what());
    }
    for (std::size_t i = 0; i < xs.size(); ++i) values[xs[i]] = ys[i];

    ProbeResult out;
    for (double h : h_grid) {
        const double scale = std::pow(h, d);
        double sym = 0.0, fwd = 0.0, bwd = 0.0;
        for (int i = 0; i <= d; ++i) {
            const double c = binomial(d, i);
            const double sgn = i % 2 == 0 ? 1.0 : -1.0;
            sym += sgn * c * values.at(x + (0.5 * d - i) * h);
            fwd += ((d - i) % 2 == 0 ? 1.0 : -1.0) * c * values.at(x + i * h);
            bwd += sgn * c * values.at(x - i * h);
        }
        out.rows.push_back({h, sym / scale, fwd / scale, bwd / scale});
    }
    out.spread_symmetric = spread(out.rows, &ProbeRow::symmetric);
    out.spread_forward = spread(out.rows, &ProbeRow::forward);
    out.spread_backward = spread(out.rows, &ProbeRow::backward);
    out.stable = out.spread_symmetric <= tol && out.spread_forward <= tol && out.spread_backward <= tol;
    return out;
}

} // namespace homog
