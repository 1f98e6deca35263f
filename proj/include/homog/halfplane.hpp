#pragma once

// Half-plane model of a parabolic germ on its positive-axis petal and the
// numeric Fatou coordinate built on it.

#include "homog/germ.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace homog {

/// Series in u = (scale * w)^{-1/k} (principal branch).
///
/// The chart scale lets k >= 2 expansions stay exact: with scale = k the
/// coefficients are rational whenever the germ is.
template <JetScalar T> struct PuiseuxJet {
    int k = 1;
    T scale = T(1);
    Jet<T> coeffs = Jet<T>::zero(0);

    Complex u_of(Complex w) const
    {
        return std::pow(to_complex(scale) * w, -1.0 / static_cast<double>(k));
    }

    Complex evaluate(Complex w) const { return coeffs.template evaluate<Complex>(u_of(w)); }

    /// Smallest power of u with a nonzero coefficient.
    std::optional<int> lowest_power() const { return coeffs.valuation(); }
};

/// phi(w) = w + shift + b / w + tail(w), shift = 1 for maps coming from germs.
template <JetScalar T> struct HalfPlaneMap {
    int k = 1;
    T shift = T(1);
    T b = T(0);
    PuiseuxJet<T> tail;

    /// phi(w) - w, computed without forming phi(w).
    Complex displacement(Complex w) const { return to_complex(shift) + to_complex(b) / w + tail.evaluate(w); }

    Complex operator()(Complex w) const { return w + displacement(w); }
};

/// Conjugates the normal form through w = 1/(k z^k).
///
/// With h(z) = z(1 + q(z)) and P = (1 + q)^{-k} = sum p_m z^m one gets
///   phi(w) = w + sum_{m >= k} (p_m / k) u^{m-k},  u = (k w)^{-1/k} = z,
/// where p_k = k gives the unit shift, p_{2k} / k^2 is b, and the normal form
/// kills the fractional powers m = k+1..2k-1.
template <JetScalar T> HalfPlaneMap<T> to_halfplane(const ParabolicData<T>& p, int order)
{
    const int k = p.k;
    const int n = std::min(order, p.normal_form.order());
    Jet<T> ratio = shift_down(p.normal_form.jet().truncated(n), 1);
    Jet<T> pm = pow(ratio, -static_cast<long>(k));
    const T kk = scalar_traits<T>::from_int(k);
    if (!is_one(T(pm[k] / kk))) throw DomainError("half-plane expansion: unexpected leading shift");
    for (int m = k + 1; m < 2 * k && m <= pm.order(); ++m)
        if (!is_zero(pm[m])) throw DomainError("half-plane expansion: germ is not in normal form");
    HalfPlaneMap<T> out;
    out.k = k;
    out.shift = T(1);
    out.b = pm.coeff(2 * k) / (kk * kk);
    const int tail_order = std::max(pm.order() - k, 0);
    std::vector<T> tail(static_cast<std::size_t>(tail_order + 1), T(0));
    for (int j = k + 1; j <= tail_order; ++j) tail[static_cast<std::size_t>(j)] = pm[k + j] / kk;
    out.tail = PuiseuxJet<T>{k, kk, Jet<T>(std::move(tail))};
    return out;
}

template <JetScalar T> HalfPlaneMap<Complex> numeric(const HalfPlaneMap<T>& hp)
{
    std::vector<Complex> c;
    for (const T& v : hp.tail.coeffs.coeffs()) c.push_back(to_complex(v));
    return HalfPlaneMap<Complex>{hp.k, to_complex(hp.shift), to_complex(hp.b),
                                 PuiseuxJet<Complex>{hp.tail.k, to_complex(hp.tail.scale), Jet<Complex>(std::move(c))}};
}

/// How sigma_n subtracts the logarithmic drift.
enum class FatouNormalization {
    /// sigma_n = phi^n(w) - n - b log n.
    log_n,
    /// sigma_n = phi^n(w) - n - b log phi^n(w); same limit, and the Abel
    /// equation holds exactly between consecutive orbit points.
    log_orbit,
};

struct FatouOptions {
    long n_max = 10'000'000;
    double tol = 1e-10;
    /// Orbit must keep Re w above this value.
    double half_plane_re = 0.5;
    /// Steps of non-decreasing |increment| that count as failure to contract.
    int stall_window = 100;
    FatouNormalization normalization = FatouNormalization::log_n;
    bool keep_increments = true;
};

enum class FatouStatus { converged, stalled, budget_exhausted };

struct FatouResult {
    Complex sigma;
    long steps = 0;
    FatouStatus status = FatouStatus::budget_exhausted;
    /// |sigma_n - sigma_{n-1}| for n = 1..steps.
    std::vector<double> increments;
};

/// Fatou coordinate sigma(w) = lim sigma_n(w). Throws DomainError with the exit
/// step if the orbit leaves the half plane.
FatouResult fatou_coordinate(const HalfPlaneMap<Complex>& hp, Complex w, const FatouOptions& opts = {});

struct PetalCheck {
    bool holds = true;
    /// Re phi^j(w) - Re w - j/2 for j = 1..J.
    std::vector<double> margins;
};

/// Tests Re phi^j(w) > Re w + j/2 for 1 <= j <= J.
PetalCheck petal_orbit_check(const HalfPlaneMap<Complex>& hp, Complex w, long J);

struct OrbitSample {
    long j;
    double value;
    double bound;
};

struct OrbitDecayCheck {
    bool holds = true;
    long first_violation = 0;
    /// max_j |h^j(z)| / bound_j.
    double worst_ratio = 0.0;
    /// Log-spaced (j, |h^j(z)|, D / j^{1/k}) samples for plotting.
    std::vector<OrbitSample> samples;
};

using ComplexMap = std::function<Complex(Complex)>;

/// Tests |h^j(z)| <= D / j^{1/k}, D = (2/k)^{1/k}, for 1 <= j <= J, where h is
/// the normal form. The closed form is used when given; otherwise the jet is
/// evaluated, guarded against leaving its accuracy radius. z must lie in the
/// positive-axis petal: Re(1/(k z^k)) > half_plane_re.
OrbitDecayCheck orbit_decay_check(int k, const Jet<Complex>& h, Complex z, long J,
                                  const ComplexMap* closed_form = nullptr, double half_plane_re = 0.5);

template <JetScalar T>
OrbitDecayCheck orbit_decay_check(const ParabolicData<T>& p, Complex z, long J, const ComplexMap* closed_form = nullptr,
                                  double half_plane_re = 0.5)
{
    std::vector<Complex> c;
    for (const T& v : p.normal_form.jet().coeffs()) c.push_back(to_complex(v));
    return orbit_decay_check(p.k, Jet<Complex>(std::move(c)), z, J, closed_form, half_plane_re);
}

} // namespace homog
