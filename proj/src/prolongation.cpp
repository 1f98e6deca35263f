#include "homog/prolongation.hpp"

#include <cmath>
#include <sstream>

namespace homog {

ProlongedPoint prolong(const GraphCurve& c, double x)
{
    if (!c.contains(x)) {
        std::ostringstream os;
        os << "x = " << x << " outside the domain of " << c.name;
        throw DomainError(os.str());
    }
    if (!c.f || !c.df) throw DomainError("derivative unavailable for " + c.name);
    return {x, c.f(x), c.df(x)};
}

namespace {

void vertical(double denom, double xi)
{
    std::ostringstream os;
    os.precision(17);
    os << "chart error: image direction is vertical (a + b xi = " << denom << " at xi = " << xi << ")";
    throw DomainError(os.str());
}

} // namespace

ProlongedPoint lift_diffeo(const PlanarDiffeo& psi, double x, double y, double xi)
{
    const Mat2<double> j = psi.jacobian(x, y);
    const double denom = j[0][0] + j[0][1] * xi;
    const double scale = std::abs(j[0][0]) + std::abs(j[0][1] * xi);
    if (!std::isfinite(denom) || std::abs(denom) <= 1e-14 * std::max(scale, 1.0)) vertical(denom, xi);
    const Point2 q = psi.map(x, y);
    return {q[0], q[1], (j[1][0] + j[1][1] * xi) / denom};
}

double lift_slope_via_inverse(const PlanarDiffeo& psi, double x, double y, double xi)
{
    Mat2<double> inv;
    if (psi.inverse_jacobian) {
        const Point2 q = psi.map(x, y);
        inv = psi.inverse_jacobian(q[0], q[1]);
    } else {
        const Mat2<double> j = psi.jacobian(x, y);
        const double d = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if (d == 0.0) throw DomainError("singular Jacobian");
        inv = {{{j[1][1] / d, -j[0][1] / d}, {-j[1][0] / d, j[0][0] / d}}};
    }
    // rows of inv: (g_x, g_y), (h_x, h_y)
    const double denom = inv[1][1] - xi * inv[0][1];
    if (std::abs(denom) <= 1e-14 * (std::abs(inv[1][1]) + std::abs(xi * inv[0][1]) + 1.0)) vertical(denom, xi);
    return (xi * inv[0][0] - inv[1][0]) / denom;
}

CommutingSquare prolong_curve_under_map(const GraphCurve& c, const PlanarDiffeo& psi, std::span<const double> xs)
{
    constexpr double h = 7e-4;
    CommutingSquare out;
    auto image = [&](double t) { return psi.map(t, c.f(t)); };
    for (double x : xs) {
        const ProlongedPoint p = prolong(c, x);
        const ProlongedPoint lifted = lift_diffeo(psi, p.x, p.y, p.xi);
        const Point2 q = image(x);
        const Point2 m2 = image(x - 2 * h), m1 = image(x - h), p1 = image(x + h), p2 = image(x + 2 * h);
        const double dx = (m2[0] - 8 * m1[0] + 8 * p1[0] - p2[0]) / (12 * h);
        const double dy = (m2[1] - 8 * m1[1] + 8 * p1[1] - p2[1]) / (12 * h);
        if (std::abs(dx) <= 1e-12 * (std::abs(dy) + 1.0)) vertical(dx, p.xi);
        const ProlongedPoint img{q[0], q[1], dy / dx};
        const double r = std::max({std::abs(img.x - lifted.x), std::abs(img.y - lifted.y),
                                   std::abs(img.xi - lifted.xi) / std::max(1.0, std::abs(lifted.xi))});
        out.max_residual = std::max(out.max_residual, r);
        out.x.push_back(x);
        out.lifted.push_back(lifted);
        out.image.push_back(img);
    }
    return out;
}

} // namespace homog
