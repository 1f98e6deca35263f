#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace homog {

/// Arbitrary-precision rational, always kept canonical.
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws DomainError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when q = 1).
std::string to_string(const Rational& q);

Rational pow(const Rational& base, long exponent);

/// Exact k-th root when one exists in Q (k >= 1).
std::optional<Rational> exact_root(const Rational& value, unsigned k);

/// Exact k-th root of a non-negative integer, if any.
std::optional<mpz_class> exact_root(const mpz_class& value, unsigned k);

} // namespace homog
