#pragma once

// Planar involutions psi o psi = Id: detection, linearization by
// phi = Id + A psi with A = d psi(0), and classification.

#include "homog/planar.hpp"

#include <string>

namespace homog {

struct InvolutionCheck {
    bool holds;
    /// max |coefficient| of psi o psi - Id.
    double residual;
};

/// psi o psi = Id to the truncation order: exact for rationals, coefficient
/// tolerance 1e-10 for floats.
template <JetScalar T> InvolutionCheck is_involution_to_order(const PlanarMap<T>& psi)
{
    const PlanarMap<T> sq = compose(psi, psi) - PlanarMap<T>::identity(psi.order());
    const double r = sq.max_abs();
    if constexpr (scalar_traits<T>::exact) return {sq.fx.is_zero_jet() && sq.fy.is_zero_jet(), r};
    else return {r <= 1e-10, r};
}

enum class InvolutionClass { identity, reflection, point_symmetry };

std::string to_string(InvolutionClass c);

template <JetScalar T> struct Linearization {
    /// phi = Id + A psi.
    PlanarMap<T> conjugator;
    LinMap2<T> linear_part;
    /// max |coefficient| of phi o psi o phi^{-1} - A (0 for exact input).
    double residual;
};

template <JetScalar T> InvolutionClass classify_involution(const PlanarMap<T>& psi)
{
    if (!is_involution_to_order(psi).holds) throw DomainError("map is not an involution to its truncation order");
    const LinMap2<T> a = psi.differential();
    const double tr = to_double(a.trace());
    if (tr > 1.0) return InvolutionClass::identity;
    if (tr < -1.0) return InvolutionClass::point_symmetry;
    return InvolutionClass::reflection;
}

template <JetScalar T> Linearization<T> linearize_involution(const PlanarMap<T>& psi)
{
    auto check = is_involution_to_order(psi);
    if (!check.holds)
        throw DomainError("map is not an involution to its truncation order (residual " + std::to_string(check.residual)
                          + ")");
    const int n = psi.order();
    if ((psi - PlanarMap<T>::identity(n)).max_abs() <= (scalar_traits<T>::exact ? 0.0 : 1e-10))
        throw DomainError("the identity has no linearization to compute");
    const LinMap2<T> a = psi.differential();
    const PlanarMap<T> phi = PlanarMap<T>::identity(n) + apply(a, psi);
    const LinMap2<T> dphi = phi.differential();
    const T two = scalar_traits<T>::from_int(2);
    const double dev = std::max({magnitude(T(dphi.m[0][0] - two)), magnitude(dphi.m[0][1]), magnitude(dphi.m[1][0]),
                                 magnitude(T(dphi.m[1][1] - two))});
    if (dev > (scalar_traits<T>::exact ? 0.0 : 1e-10)) throw DomainError("d phi(0) is not 2 Id");
    const PlanarMap<T> conj = compose(compose(phi, psi), inverse(phi));
    const double residual = (conj - PlanarMap<T>::linear(a, n)).max_abs();
    if (residual > (scalar_traits<T>::exact ? 0.0 : 1e-10))
        throw DomainError("conjugation residual " + std::to_string(residual) + " does not vanish");
    return {phi, a, residual};
}

} // namespace homog
