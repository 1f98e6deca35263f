#include "homog/halfplane.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace homog {

namespace {

// Compensated running sum.
struct KahanSum {
    Complex sum{};
    Complex carry{};

    void add(Complex x)
    {
        Complex y = x - carry;
        Complex t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

Complex log1p_small(Complex x)
{
    if (std::abs(x) < 1e-4) return x * (1.0 - x * (0.5 - x * (1.0 / 3.0 - 0.25 * x)));
    return std::log(1.0 + x);
}

bool next_sample(long j)
{
    if (j <= 10) return true;
    // roughly 20 samples per decade
    double l = std::log10(static_cast<double>(j));
    double prev = std::log10(static_cast<double>(j - 1));
    return std::floor(l * 20.0) != std::floor(prev * 20.0);
}

} // namespace

FatouResult fatou_coordinate(const HalfPlaneMap<Complex>& hp, Complex w, const FatouOptions& opts)
{
    if (w.real() <= opts.half_plane_re)
        throw DomainError("Fatou coordinate: base point is outside the half plane Re w > "
                          + std::to_string(opts.half_plane_re));
    FatouResult out;
    const bool log_orbit = opts.normalization == FatouNormalization::log_orbit;
    KahanSum sigma;
    sigma.add(w);
    if (log_orbit) sigma.add(-hp.b * std::log(w));
    KahanSum orbit;
    orbit.add(w);
    double last = std::numeric_limits<double>::infinity();
    int run = 0;
    for (long n = 1; n <= opts.n_max; ++n) {
        const Complex here = orbit.sum;
        const Complex excess = (hp.shift - 1.0) + hp.b / here + hp.tail.evaluate(here);
        const Complex step = 1.0 + excess;
        Complex drift{};
        if (log_orbit) drift = hp.b * log1p_small(step / here);
        else if (n >= 2) drift = hp.b * std::log1p(1.0 / static_cast<double>(n - 1));
        const Complex inc = excess - drift;
        sigma.add(inc);
        orbit.add(step);
        if (orbit.sum.real() <= opts.half_plane_re)
            throw DomainError("Fatou coordinate: orbit left the half plane at step " + std::to_string(n));
        const double mag = std::abs(inc);
        if (opts.keep_increments) out.increments.push_back(mag);
        out.steps = n;
        if (mag < opts.tol) {
            out.sigma = sigma.sum;
            out.status = FatouStatus::converged;
            return out;
        }
        run = mag >= last ? run + 1 : 0;
        last = mag;
        if (run >= opts.stall_window) {
            out.sigma = sigma.sum;
            out.status = FatouStatus::stalled;
            return out;
        }
    }
    out.sigma = sigma.sum;
    out.status = FatouStatus::budget_exhausted;
    return out;
}

PetalCheck petal_orbit_check(const HalfPlaneMap<Complex>& hp, Complex w, long J)
{
    PetalCheck out;
    out.margins.reserve(static_cast<std::size_t>(std::max(J, 0L)));
    KahanSum moved;
    Complex orbit = w;
    for (long j = 1; j <= J; ++j) {
        Complex d = hp.displacement(orbit);
        moved.add(d);
        orbit = w + moved.sum;
        double margin = moved.sum.real() - 0.5 * static_cast<double>(j);
        out.margins.push_back(margin);
        if (!(margin > 0.0)) out.holds = false;
    }
    return out;
}

OrbitDecayCheck orbit_decay_check(int k, const Jet<Complex>& h, Complex z, long J, const ComplexMap* closed_form,
                                  double half_plane_re)
{
    if (k < 1) throw DomainError("orbit decay check needs k >= 1");
    const Complex w = 1.0 / (static_cast<double>(k) * std::pow(z, k));
    if (!(w.real() > half_plane_re))
        throw DomainError("orbit decay check: z is not in the positive-axis petal (Re 1/(k z^k) = "
                          + std::to_string(w.real()) + ")");
    if (closed_form == nullptr) {
        // next-term estimate of the truncation error relative to |z|
        const double r = std::abs(z);
        const double err = std::abs(h[h.order()]) * std::pow(r, h.order());
        if (err > 1e-14)
            throw DomainError("orbit decay check: z lies outside the accuracy radius of the order-"
                              + std::to_string(h.order()) + " jet; supply a closed form");
    }
    const double D = std::pow(2.0 / k, 1.0 / k);
    OrbitDecayCheck out;
    Complex cur = z;
    for (long j = 1; j <= J; ++j) {
        cur = closed_form ? (*closed_form)(cur) : h.evaluate<Complex>(cur);
        const double value = std::abs(cur);
        const double bound = D / std::pow(static_cast<double>(j), 1.0 / k);
        const double ratio = value / bound;
        out.worst_ratio = std::max(out.worst_ratio, ratio);
        if (!(value <= bound) && out.holds) {
            out.holds = false;
            out.first_violation = j;
        }
        if (next_sample(j) || j == J) out.samples.push_back({j, value, bound});
    }
    return out;
}

} // namespace homog
