#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace birkhoff {

// Arbitrary precision rational, always kept in lowest terms with a positive
// denominator. NOTE: gmpxx uses expression templates, so never bind the
// result of an arithmetic expression to `auto`.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

inline bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

/// Parses `p` or `p/q` with an optional leading sign. Whitespace is not
/// accepted inside the literal.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { return Error(ErrorKind::ParseError, "invalid rational '" + s + "'"); };
    if (s.empty()) {
        throw bad();
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    std::size_t slash = s.find('/');
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) {
            return false;
        }
        for (std::size_t k = from; k < to; ++k) {
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
                return false;
            }
        }
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits(i, s.size())) {
            throw bad();
        }
    } else if (!digits(i, slash) || !digits(slash + 1, s.size())) {
        throw bad();
    }
    if (s[0] == '+') {
        s.erase(0, 1);
    }
    Rational r;
    if (slash != std::string::npos) {
        mpz_class num(s.substr(0, s.find('/')));
        mpz_class den(s.substr(s.find('/') + 1));
        if (den == 0) {
            throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
        }
        r = Rational(num, den);
    } else {
        r = Rational(mpz_class(s));
    }
    r.canonicalize();
    return r;
}

} // namespace birkhoff
