#include "homog/builtins.hpp"

namespace homog {

Jet<Rational> mobius_jet(const Rational& c, int order)
{
    std::vector<Rational> v(static_cast<std::size_t>(order + 1), Rational(0));
    Rational p(1);
    for (int n = 1; n <= order; ++n) {
        v[n] = p;
        p *= c;
    }
    return Jet<Rational>(std::move(v));
}

namespace {

Jet<Rational> scaled_mobius(const Rational& a, const Rational& c, int order)
{
    // a x / (1 - c x)
    return a * mobius_jet(c, order);
}

} // namespace

std::vector<std::string> builtin_germ_names()
{
    return {"mobius_half", "mobius_parabolic", "mobius_parabolic_inverse", "linear_half"};
}

NamedGerm builtin_germ(std::string_view name, int order)
{
    if (order < 1) throw DomainError("builtin germs need order >= 1");
    const Rational half(1, 2);
    if (name == "mobius_half")
        return {"mobius_half", "z/(2-z)", Germ1<Rational>(scaled_mobius(half, half, order)),
                [](Complex z) { return z / (2.0 - z); }, [](Complex z) { return 2.0 * z / (1.0 + z); }};
    if (name == "mobius_parabolic")
        return {"mobius_parabolic", "z/(1+z)", Germ1<Rational>(mobius_jet(Rational(-1), order)),
                [](Complex z) { return z / (1.0 + z); }, [](Complex z) { return z / (1.0 - z); }};
    if (name == "mobius_parabolic_inverse")
        return {"mobius_parabolic_inverse", "z/(1-z)", Germ1<Rational>(mobius_jet(Rational(1), order)),
                [](Complex z) { return z / (1.0 - z); }, [](Complex z) { return z / (1.0 + z); }};
    if (name == "linear_half")
        return {"linear_half", "z/2", Germ1<Rational>::linear(half, order), [](Complex z) { return z / 2.0; },
                [](Complex z) { return 2.0 * z; }};
    throw DomainError("unknown builtin germ '" + std::string(name) + "'");
}

std::vector<std::string> builtin_shear_names() { return {"bernoulli", "half_shift", "obstructed"}; }

Shear<Rational> builtin_shear(std::string_view name, int order)
{
    if (order < 2) throw DomainError("builtin shears need order >= 2");
    if (name == "bernoulli")
        return {Germ1<Rational>(mobius_jet(Rational(1), order)), Jet<Rational>::monomial(Rational(1), 2, order),
                ShearClosedForm{"bernoulli", [](double x) { return x / (1.0 - x); },
                                [](double x) { return x / (1.0 + x); }, [](double x) { return x * x; }}};
    if (name == "half_shift")
        return {Germ1<Rational>::linear(Rational(1, 2), order), Jet<Rational>::monomial(Rational(1), 1, order),
                ShearClosedForm{"half_shift", [](double x) { return x / 2.0; }, [](double x) { return 2.0 * x; },
                                [](double x) { return x; }}};
    if (name == "obstructed")
        return {Germ1<Rational>(mobius_jet(Rational(-1), order)), Jet<Rational>::monomial(Rational(1), 1, order),
                ShearClosedForm{"obstructed", [](double x) { return x / (1.0 + x); },
                                [](double x) { return x / (1.0 - x); }, [](double x) { return x; }}};
    throw DomainError("unknown builtin shear '" + std::string(name) + "'");
}

} // namespace homog
