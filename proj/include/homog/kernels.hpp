#pragma once

// Batch kernels with a serial reference and an OpenMP variant. Both produce
// identical results: every output element is computed independently.

#include "homog/halfplane.hpp"
#include "homog/shears.hpp"

#include <span>
#include <vector>

namespace homog::kernels {

enum class Exec { serial, parallel };

/// f(x) for every x; the first exception thrown by f is rethrown.
std::vector<double> sample(const RealMap& f, std::span<const double> xs, Exec exec = Exec::parallel);

/// numeric_invariant_curve at every x0.
std::vector<NumericCurveResult> invariant_curve_batch(const RealShear& s, std::span<const double> xs,
                                                      const NumericCurveOptions& opts, Exec exec = Exec::parallel);

/// fatou_coordinate at every base point.
std::vector<FatouResult> fatou_batch(const HalfPlaneMap<Complex>& hp, std::span<const Complex> ws,
                                     const FatouOptions& opts, Exec exec = Exec::parallel);

} // namespace homog::kernels
