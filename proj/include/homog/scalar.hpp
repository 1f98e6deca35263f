#pragma once

#include "homog/rational.hpp"

#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <type_traits>

namespace homog {

using Complex = std::complex<double>;

enum class ScalarKind { rational, real, complex };

std::string to_string(ScalarKind kind);

/// Float kinds decide "is exactly 1" / "is zero" with this tolerance.
inline constexpr double float_decision_tol = 1e-12;

template <typename T>
concept JetScalar = std::same_as<T, Rational> || std::same_as<T, double> || std::same_as<T, Complex>;

template <typename T>
concept RealScalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <JetScalar T> struct scalar_traits;

template <> struct scalar_traits<Rational> {
    static constexpr ScalarKind kind = ScalarKind::rational;
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static bool is_one(const Rational& x) { return x == 1; }
    static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
    static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
    static Rational from_int(long n) { return Rational(n); }
    static Rational from_rational(const Rational& q) { return q; }
};

template <> struct scalar_traits<double> {
    static constexpr ScalarKind kind = ScalarKind::real;
    static constexpr bool exact = false;
    static bool is_zero(double x) { return std::abs(x) <= float_decision_tol; }
    static bool is_one(double x) { return std::abs(x - 1.0) <= float_decision_tol; }
    static double magnitude(double x) { return std::abs(x); }
    static Complex to_complex(double x) { return {x, 0.0}; }
    static double from_int(long n) { return static_cast<double>(n); }
    static double from_rational(const Rational& q) { return q.get_d(); }
};

template <> struct scalar_traits<Complex> {
    static constexpr ScalarKind kind = ScalarKind::complex;
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x) { return std::abs(x) <= float_decision_tol; }
    static bool is_one(const Complex& x) { return std::abs(x - 1.0) <= float_decision_tol; }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex to_complex(const Complex& x) { return x; }
    static Complex from_int(long n) { return {static_cast<double>(n), 0.0}; }
    static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
};

template <JetScalar T> bool is_zero(const T& x) { return scalar_traits<T>::is_zero(x); }
template <JetScalar T> bool is_one(const T& x) { return scalar_traits<T>::is_one(x); }
template <JetScalar T> double magnitude(const T& x) { return scalar_traits<T>::magnitude(x); }
template <JetScalar T> Complex to_complex(const T& x) { return scalar_traits<T>::to_complex(x); }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

/// Integer power by repeated squaring; exact for rationals.
template <JetScalar T> T ipow(T base, long e)
{
    T one = scalar_traits<T>::from_int(1);
    if (e < 0) return ipow(T(one / base), -e);
    T acc = one;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

} // namespace homog
