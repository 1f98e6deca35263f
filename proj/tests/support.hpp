#pragma once

// Shared generators and closed-form oracles for the test suites.

#include "homog/germ.hpp"

#include <random>
#include <vector>

namespace homog::test {

using Q = Rational;

inline Q q(long p, long d = 1)
{
    Q r(p, d);
    r.canonicalize();
    return r;
}

/// Jet of x/(1 - c x) = sum c^{n-1} x^n.
inline Jet<Q> mobius(const Q& c, int order)
{
    std::vector<Q> v(static_cast<std::size_t>(order + 1), Q(0));
    Q p(1);
    for (int n = 1; n <= order; ++n) {
        v[n] = p;
        p *= c;
    }
    return Jet<Q>(std::move(v));
}

/// Small random rational in [-range, range] with denominator in 1..max_den.
inline Q random_rational(std::mt19937_64& rng, int range = 3, int max_den = 4)
{
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, max_den);
    return q(num(rng), den(rng));
}

inline Jet<Q> random_jet(std::mt19937_64& rng, int order, int first = 0)
{
    std::vector<Q> v(static_cast<std::size_t>(order + 1), Q(0));
    for (int i = first; i <= order; ++i) v[i] = random_rational(rng);
    return Jet<Q>(std::move(v));
}

/// Random germ with the given multiplier.
inline Germ1<Q> random_germ(std::mt19937_64& rng, const Q& lambda, int order)
{
    Jet<Q> j = random_jet(rng, order, 2);
    std::vector<Q> v(j.coeffs().begin(), j.coeffs().end());
    v[1] = lambda;
    return Germ1<Q>(Jet<Q>(std::move(v)));
}

/// Independent convolution of two coefficient lists, truncated at n.
inline std::vector<Q> convolve(const std::vector<Q>& a, const std::vector<Q>& b, int n)
{
    std::vector<Q> out(static_cast<std::size_t>(n + 1), Q(0));
    for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace homog::test
