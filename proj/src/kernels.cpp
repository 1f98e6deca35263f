#include "homog/kernels.hpp"

#include "homog/detail/parallel.hpp"

#include <utility>

namespace homog::kernels {

namespace {

template <typename Body> void for_each_index(long n, Exec exec, Body&& body)
{
    detail::for_each_index(n, exec == Exec::parallel, std::forward<Body>(body));
}

} // namespace

std::vector<double> sample(const RealMap& f, std::span<const double> xs, Exec exec)
{
    std::vector<double> out(xs.size());
    for_each_index(static_cast<long>(xs.size()), exec, [&](long i) { out[i] = f(xs[i]); });
    return out;
}

std::vector<NumericCurveResult> invariant_curve_batch(const RealShear& s, std::span<const double> xs,
                                                      const NumericCurveOptions& opts, Exec exec)
{
    std::vector<NumericCurveResult> out(xs.size());
    for_each_index(static_cast<long>(xs.size()), exec,
                   [&](long i) { out[i] = numeric_invariant_curve(s, xs[i], opts); });
    return out;
}

std::vector<FatouResult> fatou_batch(const HalfPlaneMap<Complex>& hp, std::span<const Complex> ws,
                                     const FatouOptions& opts, Exec exec)
{
    std::vector<FatouResult> out(ws.size());
    for_each_index(static_cast<long>(ws.size()), exec, [&](long i) { out[i] = fatou_coordinate(hp, ws[i], opts); });
    return out;
}

} // namespace homog::kernels
