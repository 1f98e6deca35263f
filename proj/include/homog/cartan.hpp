#pragma once

// Infinitesimal generators of near-identity map families, RK4 flows, and
// residual checks for curves under transformation families.

#include "homog/curves.hpp"
#include "homog/prolongation.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace homog {

struct Box {
    double xlo = -std::numeric_limits<double>::infinity();
    double xhi = std::numeric_limits<double>::infinity();
    double ylo = -std::numeric_limits<double>::infinity();
    double yhi = std::numeric_limits<double>::infinity();

    bool contains(const Point2& p) const { return p[0] >= xlo && p[0] <= xhi && p[1] >= ylo && p[1] <= yhi; }
};

using FamilyMap = std::function<Point2(double t, double x, double y)>;

/// t -> S_t with S_0 = Id, evaluable for 0 <= t <= t_max on a common domain.
struct MapFamily {
    std::string name;
    FamilyMap map;
    double t_max = 1.0;
    Box domain = {};

    PointMap at(double t) const
    {
        return [f = map, t](double x, double y) { return f(t, x, y); };
    }
};

struct FlowField {
    std::string name;
    PointMap field;
    Box domain = {};
};

/// "affine_exp" (x + t, e^t y), "translate" (x + t, y), "contract" ((1 - t) x, (1 - t) y),
/// "contract_exp" (e^{-t} x, e^{-t} y). All but "contract" are one-parameter groups.
MapFamily builtin_family(const std::string& name);
std::vector<std::string> builtin_family_names();

/// t0 2^{-i}, i = 0 .. levels - 1.
std::vector<double> halving_scales(double t0 = 0.05, int levels = 8);

struct GeneratorValue {
    Point2 value;
    /// change of the three-scale extrapolation between the last two windows (max over components)
    double error;
};

/// Limit of (S_t(p) - p) / t along t_seq by polynomial extrapolation to t = 0
/// over the last three scales. Throws ConvergenceError when the error estimate
/// stops decreasing above the rounding floor.
GeneratorValue generator_at(const MapFamily& fam, std::span<const double> t_seq, const Point2& p);

struct GeneratorSample {
    Point2 p;
    Point2 value;
    double error;
};

struct GeneratorResult {
    /// Evaluates the extrapolated limit on demand at any point.
    FlowField field;
    std::vector<GeneratorSample> samples;
    double max_error = 0.0;
    std::vector<double> t_seq;
};

GeneratorResult infinitesimal_generator(const MapFamily& fam, std::span<const double> t_seq,
                                        std::span<const Point2> grid, bool parallel = false);

struct FlowOptions {
    /// absolute, on the difference between the n-step and 2n-step solutions
    double tol = 1e-10;
    int samples = 16;
    int max_steps = 1 << 20;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Point2> points;
    int steps = 0;
    double error_estimate = 0.0;

    const Point2& end() const { return points.back(); }
};

/// Classical RK4 with fixed step, halved until two successive solutions agree
/// to opts.tol. DomainError on leaving the field's domain, ConvergenceError on
/// step underflow.
Trajectory integrate_flow(const FlowField& vf, const Point2& p0, double t, const FlowOptions& opts = {});

/// |psi_y(x, f(x)) - f(psi_x(x, f(x)))| at each grid point.
std::vector<double> invariance_residuals(const GraphCurve& c, const PointMap& psi, std::span<const double> xs,
                                         bool parallel = false);
double invariance_residual(const GraphCurve& c, const PointMap& psi, std::span<const double> xs);

/// sup over t_grid of |y(t) - f(x(t))| along the flow from p0.
double flow_matches_curve(const FlowField& vf, const GraphCurve& c, const Point2& p0, std::span<const double> t_grid,
                          const FlowOptions& opts = {});

struct QuotientProbeOptions {
    int degree = 12;
    std::vector<double> radii{0.25, 0.125};
};

/// Heuristic evidence only: the probe never decides analyticity.
struct QuotientScore {
    double t;
    int degree;
    std::vector<double> radii;
    /// max |c_n|^{1/n} over degree/2 <= n <= degree, one per radius
    std::vector<double> inverse_radius;
    /// Taylor coefficient estimates of g_t at x0 for the first radius
    std::vector<double> coefficients;
    bool consistent;

    std::string verdict() const { return consistent ? "consistent with analytic" : "inconsistent"; }
};

/// For each t, Taylor coefficients of g_t(x) = f(x + t) - f(x) at x0 from
/// Chebyshev interpolation on [x0 - r, x0 + r]. Scored consistent when the
/// estimates agree across radii within a factor 1.5 and stay below 1/(2 r_max).
std::vector<QuotientScore> difference_quotient_harness(const RealMap& f, double lo, double hi,
                                                       std::span<const double> ts, double x0,
                                                       const QuotientProbeOptions& opts = {});

} // namespace homog
