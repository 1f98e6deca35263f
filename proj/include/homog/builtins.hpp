#pragma once

// Named germs and shears with closed-form evaluators.

#include "homog/halfplane.hpp"
#include "homog/shears.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace homog {

struct NamedGerm {
    std::string name;
    std::string formula;
    Germ1<Rational> germ;
    ComplexMap closed_form;
    ComplexMap closed_inverse;
};

/// mobius_half = z/(2-z), mobius_parabolic = z/(1+z),
/// mobius_parabolic_inverse = z/(1-z), linear_half = z/2.
NamedGerm builtin_germ(std::string_view name, int order = default_order);
std::vector<std::string> builtin_germ_names();

/// bernoulli = (x/(1-x), x^2), half_shift = (x/2, x), obstructed = (x/(1+x), x).
Shear<Rational> builtin_shear(std::string_view name, int order = default_order);
std::vector<std::string> builtin_shear_names();

/// Jet of x/(1 - c x).
Jet<Rational> mobius_jet(const Rational& c, int order);

} // namespace homog
