#pragma once

// Shears (x, y) -> (h(x), y + g(x)) and their invariant graphs y = f(x),
// which solve the cohomological equation f o h - f = g.

#include "homog/germ.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace homog {

using RealMap = std::function<double(double)>;

/// Optional closed-form evaluators; each may be empty.
struct ShearClosedForm {
    std::string name;
    RealMap base;
    RealMap base_inverse;
    RealMap additive;
};

template <JetScalar T> struct Shear {
    Germ1<T> base;
    Jet<T> additive;
    std::optional<ShearClosedForm> closed_form = std::nullopt;

    int order() const { return std::min(base.order(), additive.order()); }

    static Shear identity(int order) { return Shear{Germ1<T>::identity(order), Jet<T>::zero(order)}; }
};

/// (h2, g2) o (h1, g1) = (h2 o h1, g1 + g2 o h1). Closed forms are dropped.
template <JetScalar T> Shear<T> compose(const Shear<T>& s2, const Shear<T>& s1)
{
    return Shear<T>{compose(s2.base, s1.base), s1.additive + compose(s2.additive, s1.base.jet())};
}

/// (h, g)^{-1} = (h^{-1}, -g o h^{-1}); closed forms carry over when the inverse base is known.
template <JetScalar T> Shear<T> inverse(const Shear<T>& s)
{
    Germ1<T> hi = inverse(s.base);
    Shear<T> out{hi, -compose(s.additive, hi.jet())};
    if (s.closed_form && s.closed_form->base_inverse && s.closed_form->additive) {
        const auto& cf = *s.closed_form;
        out.closed_form = ShearClosedForm{cf.name + "^-1", cf.base_inverse, cf.base,
                                          [g = cf.additive, hi = cf.base_inverse](double x) { return -g(hi(x)); }};
    }
    return out;
}

enum class Reduction { squared, inverted };

inline std::string to_string(Reduction r) { return r == Reduction::squared ? "squared" : "inverted"; }

struct HyperbolicShear {
    double lambda;
};
struct ParabolicSolvable {
    int k;
    /// Order of g; empty when g vanishes to the truncation order.
    std::optional<int> ell;
};
struct ParabolicObstructed {
    int k;
    int ell;
};
struct TrivialBase {};

struct ShearClass {
    std::variant<HyperbolicShear, ParabolicSolvable, ParabolicObstructed, TrivialBase> kind;
    /// Reductions applied before classifying (only for lambda = -1).
    std::vector<Reduction> reductions;
};

template <JetScalar T> struct NoFormalSolution {
    int ell;
    T coefficient;
};

template <JetScalar T> struct FormalCurveResult {
    std::optional<Jet<T>> curve;
    std::optional<NoFormalSolution<T>> obstruction;
    /// Substitutions s -> s o s / s^{-1} applied before solving.
    std::vector<Reduction> reductions;

    bool solved() const { return curve.has_value(); }
};

namespace detail {

template <JetScalar T> bool is_negative(const T& x)
{
    if constexpr (std::same_as<T, Complex>) return x.real() < 0;
    else return x < 0;
}

template <JetScalar T> bool is_real_multiplier(const T& x)
{
    if constexpr (std::same_as<T, Complex>) return std::abs(x.imag()) <= float_decision_tol;
    else return true;
}

// Replaces s by s o s (lambda < 0) and then by s^{-1} (|lambda| > 1).
template <JetScalar T> Shear<T> reduce_hyperbolic(const Shear<T>& s, std::vector<Reduction>& log)
{
    Shear<T> r = s;
    if (is_negative(r.base.multiplier())) {
        Shear<T> sq = compose(r, r);
        if (r.closed_form && r.closed_form->base && r.closed_form->additive) {
            const auto cf = *r.closed_form;
            RealMap bi;
            if (cf.base_inverse) bi = [b = cf.base_inverse](double x) { return b(b(x)); };
            sq.closed_form = ShearClosedForm{cf.name + "^2", [b = cf.base](double x) { return b(b(x)); }, bi,
                                             [b = cf.base, g = cf.additive](double x) { return g(x) + g(b(x)); }};
        }
        r = std::move(sq);
        log.push_back(Reduction::squared);
    }
    if (magnitude(r.base.multiplier()) > 1.0) {
        r = inverse(r);
        log.push_back(Reduction::inverted);
    }
    return r;
}

template <JetScalar T> std::optional<int> valuation_from(const Jet<T>& g, int from)
{
    for (int i = from; i <= g.order(); ++i)
        if (!is_zero(g[i])) return i;
    return std::nullopt;
}

// Multiplicative powers h, h^2, ..., h^count truncated at order n.
template <JetScalar T> std::vector<Jet<T>> powers_of(const Jet<T>& h, int count, int n)
{
    std::vector<Jet<T>> out;
    const Jet<T> hn = h.truncated(n);
    if (count >= 1) out.push_back(hn);
    for (int m = 2; m <= count; ++m) out.push_back(out.back() * hn);
    return out;
}

} // namespace detail

/// Classification from exact jet orders (tolerance 1e-12 for float kinds).
template <JetScalar T> ShearClass convergence_classifier(const Shear<T>& s)
{
    ShearClass out;
    Shear<T> work = s;
    const T lambda = s.base.multiplier();
    if (!detail::is_real_multiplier(lambda)) throw DomainError("shear base must have a real multiplier");
    auto regime = multiplier_regime(lambda);
    if (regime == MultiplierRegime::elliptic) {
        work = compose(s, s);
        out.reductions.push_back(Reduction::squared);
        regime = multiplier_regime(work.base.multiplier());
    }
    if (regime == MultiplierRegime::attracting || regime == MultiplierRegime::repelling) {
        out.kind = HyperbolicShear{to_double(lambda)};
        return out;
    }
    if (work.base.is_identity()) {
        out.kind = TrivialBase{};
        return out;
    }
    const int k = parabolic_order(work.base);
    const auto ell = detail::valuation_from(work.additive, 0);
    if (ell && *ell <= k) out.kind = ParabolicObstructed{k, *ell};
    else out.kind = ParabolicSolvable{k, ell};
    return out;
}

/// Direct order-by-order solve of f o h - f = g for |lambda| != 1:
///   f_n (lambda^n - 1) = g_n - sum_{m<n} f_m [h^m]_n.
/// No reductions; used as the second solver ordering.
template <JetScalar T> Jet<T> formal_invariant_curve_triangular(const Shear<T>& s, int order = default_order)
{
    const T lambda = s.base.multiplier();
    auto regime = multiplier_regime(lambda);
    if (regime == MultiplierRegime::parabolic || regime == MultiplierRegime::elliptic)
        throw DomainError("triangular hyperbolic solve needs |lambda| != 1");
    if (!is_zero(s.additive[0])) throw DomainError("g(0) must vanish for a curve through 0");
    const int n = std::min({order, s.base.order(), s.additive.order()});
    auto pw = detail::powers_of(s.base.jet(), n, n);
    std::vector<T> f(static_cast<std::size_t>(n + 1), T(0));
    T lp(1);
    for (int i = 1; i <= n; ++i) {
        lp = lp * lambda;
        T rhs = s.additive[i];
        for (int m = 1; m < i; ++m) rhs -= f[m] * pw[static_cast<std::size_t>(m - 1)][i];
        f[i] = rhs / (lp - T(1));
    }
    return Jet<T>(std::move(f));
}

/// Formal invariant curve f with f(0) = 0 and f o h - f = g.
///
/// Hyperbolic bases go through the Koenigs coordinate eta: with
/// g o eta^{-1} = sum a_j u^j the solution is sum -a_j/(1 - lambda^j) u^j
/// pulled back by eta. Parabolic bases h = x + a_{k+1} x^{k+1} + ... are solved
/// triangularly: the x^n equation determines f_{n-k} through
///   f_{n-k} (n-k) a_{k+1} = g_n - sum_{m<n-k} f_m [h^m]_n,
/// and the equations n <= k force g_n = 0. Result order is min(N, h.N, g.N)
/// in the hyperbolic case and min(N, h.N - k, g.N - k) in the parabolic one.
template <JetScalar T> FormalCurveResult<T> formal_invariant_curve(const Shear<T>& s, int order = default_order)
{
    FormalCurveResult<T> out;
    const T lambda = s.base.multiplier();
    if (!detail::is_real_multiplier(lambda)) throw DomainError("shear base must have a real multiplier");
    auto regime = multiplier_regime(lambda);
    Shear<T> work = s;
    if (regime == MultiplierRegime::elliptic || regime == MultiplierRegime::repelling || detail::is_negative(lambda)) {
        work = detail::reduce_hyperbolic(s, out.reductions);
        regime = multiplier_regime(work.base.multiplier());
    }
    if (work.base.is_identity()) {
        if (work.additive.is_zero_jet())
            throw DomainError("shear base is the identity: every graph is invariant, no unique curve");
        throw DomainError("shear base is the identity and g is nonzero: no invariant curve exists");
    }

    if (regime == MultiplierRegime::attracting) {
        if (!is_zero(work.additive[0])) {
            out.obstruction = NoFormalSolution<T>{0, work.additive[0]};
            return out;
        }
        const int n = std::min({order, work.base.order(), work.additive.order()});
        const T lam = work.base.multiplier();
        Germ1<T> eta = koenigs_linearize(work.base, n);
        Jet<T> g1 = compose(work.additive.truncated(n), inverse(eta).jet());
        std::vector<T> b(static_cast<std::size_t>(n + 1), T(0));
        T lp(1);
        for (int j = 1; j <= n; ++j) {
            lp = lp * lam;
            b[j] = -g1[j] / (T(1) - lp);
        }
        out.curve = compose(Jet<T>(std::move(b)), eta.jet());
    } else {
        const int k = parabolic_order(work.base);
        const T lead = work.base[k + 1];
        for (int i = 0; i <= std::min(k, work.additive.order()); ++i) {
            if (!is_zero(work.additive[i])) {
                out.obstruction = NoFormalSolution<T>{i, work.additive[i]};
                return out;
            }
        }
        const int n = std::min({order, work.base.order() - k, work.additive.order() - k});
        if (n < 1) throw DomainError("truncation order too small to solve the parabolic cohomological equation");
        auto pw = detail::powers_of(work.base.jet(), n, n + k);
        std::vector<T> f(static_cast<std::size_t>(n + 1), T(0));
        for (int i = k + 1; i <= n + k; ++i) {
            const int target = i - k;
            T rhs = work.additive[i];
            for (int m = 1; m < target; ++m) rhs -= f[m] * pw[static_cast<std::size_t>(m - 1)][i];
            f[target] = rhs / (scalar_traits<T>::from_int(target) * lead);
        }
        out.curve = Jet<T>(std::move(f));
    }

    if (!out.reductions.empty()) {
        // the reduced shear's curve must also be invariant under the original one
        const Jet<T>& f = *out.curve;
        const int n = std::min(f.order(), s.additive.order());
        Jet<T> res = compose(f, s.base.jet()).truncated(n) - f.truncated(n) - s.additive.truncated(n);
        if (auto v = res.valuation()) {
            out.obstruction = NoFormalSolution<T>{*v, -res[*v]};
            out.curve.reset();
        }
    }
    return out;
}

enum class SumStatus { converged, divergent, budget_exhausted };

std::string to_string(SumStatus s);

struct NumericCurveOptions {
    double tol = 1e-12;
    long j_max = 10'000'000;
    /// Terms averaged for the decay-rate estimate.
    int window = 50;
};

struct NumericCurveResult {
    double value = 0.0;
    long terms = 0;
    double tail_estimate = 0.0;
    SumStatus status = SumStatus::budget_exhausted;
    std::vector<Reduction> reductions;
    /// x0 was summed along the inverse shear (repelling side of h).
    bool inverse_side = false;
    bool closed_form_used = false;
    /// Fitted log-log slope of |g(h^j(x0))| at the end of the run (0 when unknown).
    double term_slope = 0.0;
};

/// Real-valued description of a shear used by the orbit summation.
struct RealShear {
    RealMap base;
    RealMap base_inverse;
    RealMap additive;
    double lambda = 1.0;
    /// Parabolic order and x^{k+1} coefficient of the base (k = 0 when hyperbolic).
    int k = 0;
    double lead = 0.0;
    bool closed_form_used = false;
};

/// Evaluators from the closed form when the shear has one, else from the jets.
template <JetScalar T> RealShear real_shear(const Shear<T>& s)
{
    if constexpr (std::same_as<T, Complex>) {
        throw DomainError("numeric invariant curves need a real or rational shear");
    } else {
        auto to_dbl = [](const Jet<T>& j) {
            std::vector<double> c;
            for (const T& v : j.coeffs()) c.push_back(to_double(v));
            return Jet<double>(std::move(c));
        };
        const ShearClosedForm* cf = s.closed_form ? &*s.closed_form : nullptr;
        auto make = [&](const Jet<T>& j, const RealMap& closed) -> RealMap {
            // a closed form is exact at every x, the jet only near 0
            if (closed) return closed;
            return [dj = to_dbl(j)](double x) { return dj.evaluate(x); };
        };
        RealShear out;
        out.base = make(s.base.jet(), cf ? cf->base : RealMap{});
        out.base_inverse = make(inverse(s.base).jet(), cf ? cf->base_inverse : RealMap{});
        out.additive = make(s.additive, cf ? cf->additive : RealMap{});
        out.lambda = to_double(s.base.multiplier());
        out.closed_form_used = cf != nullptr;
        if (is_one(s.base.multiplier()) && !s.base.is_identity()) {
            out.k = parabolic_order(s.base);
            out.lead = to_double(s.base[out.k + 1]);
        }
        return out;
    }
}

/// -sum_{j>=0} g(h^j(x0)) for a base with 0 < lambda < 1 or lambda = 1.
///
/// Hyperbolic sums stop once the geometric tail bound falls below tol.
/// Parabolic sums record partial sums at doubling checkpoints and extrapolate
/// the tail (Richardson in powers J^{-1/k}); divergence is reported when the
/// fitted decay exponent of the terms is above -1 - 1/(2k) late in the orbit.
/// x0 on the repelling side of h is summed along the inverse shear.
NumericCurveResult numeric_invariant_curve(const RealShear& s, double x0, const NumericCurveOptions& opts = {});

/// Same as above, applying the hyperbolic reductions (squaring, inversion) first.
template <JetScalar T>
NumericCurveResult numeric_invariant_curve(const Shear<T>& s, double x0, const NumericCurveOptions& opts = {})
{
    std::vector<Reduction> log;
    const Shear<T> work = detail::reduce_hyperbolic(s, log);
    if (work.base.is_identity()) throw DomainError("shear base is the identity: no orbit to sum");
    NumericCurveResult r = numeric_invariant_curve(real_shear(work), x0, opts);
    r.reductions.insert(r.reductions.begin(), log.begin(), log.end());
    return r;
}

/// Two-sided curve sampler with f(0) = 0; throws ConvergenceError when a sample fails to converge.
template <JetScalar T> RealMap invariant_curve_sampler(const Shear<T>& s, const NumericCurveOptions& opts = {})
{
    std::vector<Reduction> log;
    const Shear<T> work = detail::reduce_hyperbolic(s, log);
    auto rs = std::make_shared<RealShear>(real_shear(work));
    return [rs, opts](double x) {
        if (x == 0.0) return 0.0;
        auto r = numeric_invariant_curve(*rs, x, opts);
        if (r.status != SumStatus::converged)
            throw ConvergenceError("invariant curve sum did not converge at x = " + std::to_string(x) + " ("
                                   + to_string(r.status) + ")");
        return r.value;
    };
}

struct ProbeRow {
    double h;
    double symmetric;
    double forward;
    double backward;
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    bool stable = false;
    /// max - min over the last three grid points, per estimate.
    double spread_symmetric = 0.0;
    double spread_forward = 0.0;
    double spread_backward = 0.0;
};

/// d-th divided differences at x: symmetric (half-integer offsets for odd d),
/// forward and backward, for each h. Stable iff all three sequences vary by at
/// most tol over the last three grid points.
ProbeResult regularity_probe(const RealMap& f, double x, std::span<const double> h_grid, int d, double tol);

} // namespace homog
