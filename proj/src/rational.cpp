#include "homog/rational.hpp"

#include "homog/error.hpp"

#include <cctype>

namespace homog {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw DomainError("malformed rational literal '" + std::string(text) + "'");
    mpz_class p(std::string(num[0] == '+' ? num.substr(1) : num));
    mpz_class q{std::string(den)};
    if (q == 0) throw DomainError("zero denominator in rational literal '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational pow(const Rational& base, long exponent)
{
    if (exponent < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::optional<mpz_class> exact_root(const mpz_class& value, unsigned k)
{
    if (k == 0) return std::nullopt;
    if (value < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = exact_root(mpz_class(-value), k);
        if (!r) return std::nullopt;
        return mpz_class(-*r);
    }
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), k) == 0) return std::nullopt;
    return root;
}

std::optional<Rational> exact_root(const Rational& value, unsigned k)
{
    auto num = exact_root(mpz_class(value.get_num()), k);
    auto den = exact_root(mpz_class(value.get_den()), k);
    if (!num || !den) return std::nullopt;
    Rational r(*num, *den);
    r.canonicalize();
    return r;
}

} // namespace homog
