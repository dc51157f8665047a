#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "error.hpp"
#include "rational.hpp"

namespace birkhoff {

/// Truncated formal Laurent series in the regulator t over exact rationals.
///
/// Every series carries its own validity window: coefficients of t^k are
/// known for k < trunc_order(). A series without a truncation order is exact
/// (a Laurent polynomial). Arithmetic computes the tightest sound window for
/// its result, so loss of precision is reported instead of silently producing
/// wrong coefficients.
class LaurentSeries
{
public:
    using Terms = std::map<int, Rational>;

    LaurentSeries() = default;

    LaurentSeries(Terms terms, std::optional<int> trunc_order) : terms_(std::move(terms)), trunc_(trunc_order)
    {
        normalize();
    }

    static LaurentSeries constant(const Rational &c)
    {
        return monomial(c, 0);
    }

    static LaurentSeries monomial(const Rational &c, int exponent, std::optional<int> trunc_order = std::nullopt)
    {
        return LaurentSeries(Terms{{exponent, c}}, trunc_order);
    }

    /// The zero series known up to (excluding) t^order.
    static LaurentSeries big_o(int order)
    {
        return LaurentSeries(Terms{}, order);
    }

    const Terms &terms() const noexcept
    {
        return terms_;
    }

    std::optional<int> trunc_order() const noexcept
    {
        return trunc_;
    }

    bool is_exact() const noexcept
    {
        return !trunc_.has_value();
    }

    // True when no known coefficient is nonzero. An inexact zero O(t^k) is
    // zero only on its window.
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    bool is_exact_zero() const noexcept
    {
        return terms_.empty() && !trunc_;
    }

    /// Lowest exponent with a nonzero coefficient.
    std::optional<int> valuation() const
    {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.begin()->first;
    }

    /// Lowest exponent that may carry a nonzero coefficient: the valuation,
    /// or the truncation order for an inexact zero.
    std::optional<int> min_exp() const
    {
        if (!terms_.empty()) {
            return terms_.begin()->first;
        }
        return trunc_;
    }

    bool is_constant() const
    {
        return is_exact() && (terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0));
    }

    Rational coeff(int exponent) const
    {
        if (trunc_ && exponent >= *trunc_) {
            throw Error(ErrorKind::TruncationExhausted,
                        "coefficient of t^" + std::to_string(exponent) + " is beyond O(t^" + std::to_string(*trunc_)
                            + ")");
        }
        auto it = terms_.find(exponent);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    LaurentSeries truncated(int order) const
    {
        int t = trunc_ ? std::min(*trunc_, order) : order;
        return LaurentSeries(terms_, t);
    }

    LaurentSeries operator-() const
    {
        Terms out;
        for (const auto &[e, c] : terms_) {
            out.emplace(e, -c);
        }
        return LaurentSeries(std::move(out), trunc_);
    }

    friend LaurentSeries operator+(const LaurentSeries &a, const LaurentSeries &b)
    {
        Terms out = a.terms_;
        for (const auto &[e, c] : b.terms_) {
            out[e] += c;
        }
        return LaurentSeries(std::move(out), min_order(a.trunc_, b.trunc_));
    }

    friend LaurentSeries operator-(const LaurentSeries &a, const LaurentSeries &b)
    {
        return a + (-b);
    }

    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b);

    friend LaurentSeries operator*(const Rational &s, const LaurentSeries &a)
    {
        if (s == 0) {
            return a.trunc_ ? big_o(*a.trunc_) : LaurentSeries();
        }
        Terms out;
        for (const auto &[e, c] : a.terms_) {
            out.emplace(e, s * c);
        }
        return LaurentSeries(std::move(out), a.trunc_);
    }

    LaurentSeries &operator+=(const LaurentSeries &b)
    {
        for (const auto &[e, c] : b.terms_) {
            terms_[e] += c;
        }
        trunc_ = min_order(trunc_, b.trunc_);
        normalize();
        return *this;
    }

    // Structural equality: same known coefficients and same window.
    friend bool operator==(const LaurentSeries &a, const LaurentSeries &b)
    {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

    static std::optional<int> min_order(std::optional<int> a, std::optional<int> b)
    {
        if (!a) {
            return b;
        }
        if (!b) {
            return a;
        }
        return std::min(*a, *b);
    }

private:
    void normalize()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0 || (trunc_ && it->first >= *trunc_)) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }

    Terms terms_;
    std::optional<int> trunc_;
};

namespace detail {

inline std::optional<int> shift(std::optional<int> order, int by)
{
    if (!order) {
        return std::nullopt;
    }
    return *order + by;
}

} // namespace detail

inline LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) {
        return LaurentSeries();
    }
    // min_exp is defined here: both are either nonzero or inexact zeros.
    const int va = *a.min_exp();
    const int vb = *b.min_exp();
    std::optional<int> trunc = LaurentSeries::min_order(detail::shift(b.trunc_, va), detail::shift(a.trunc_, vb));
    if (!a.is_zero() && !b.is_zero() && trunc && *trunc <= va + vb) {
        throw Error(ErrorKind::TruncationExhausted, "product window is empty (O(t^" + std::to_string(*trunc)
                                                        + ") at leading exponent " + std::to_string(va + vb) + ")");
    }
    LaurentSeries::Terms out;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            if (trunc && ea + eb >= *trunc) {
                break;
            }
            out[ea + eb] += ca * cb;
        }
    }
    return LaurentSeries(std::move(out), trunc);
}

inline LaurentSeries series_add(const LaurentSeries &a, const LaurentSeries &b)
{
    return a + b;
}

inline LaurentSeries series_mul(const LaurentSeries &a, const LaurentSeries &b)
{
    return a * b;
}

/// Quotient a/b by long division after factoring out the leading monomial
/// of b. When both operands are exact and b divides a as Laurent
/// polynomials the quotient is exact; an exact quotient that does not
/// terminate is expanded up to `fallback_trunc`.
inline LaurentSeries series_div(const LaurentSeries &a, const LaurentSeries &b, int fallback_trunc = 8)
{
    if (b.is_zero()) {
        throw Error(ErrorKind::DivisionByZeroSeries, "divisor has no known nonzero coefficient");
    }
    const int m = *b.valuation();
    const Rational lead = b.terms().begin()->second;
    if (a.is_exact_zero()) {
        return LaurentSeries();
    }
    const int va = *a.min_exp();
    const int vq = va - m;

    std::optional<int> rel_a = a.trunc_order() ? std::optional<int>(*a.trunc_order() - va) : std::nullopt;
    std::optional<int> rel_b = b.trunc_order() ? std::optional<int>(*b.trunc_order() - m) : std::nullopt;
    std::optional<int> rel = LaurentSeries::min_order(rel_a, rel_b);
    std::optional<int> trunc = detail::shift(rel, vq);

    if (a.is_zero()) {
        return LaurentSeries::big_o(*trunc);
    }

    // Exact operands: try terminating division first.
    std::optional<int> exact_bound;
    if (!trunc) {
        exact_bound = a.terms().rbegin()->first - b.terms().rbegin()->first;
    }

    LaurentSeries::Terms quotient;
    LaurentSeries::Terms rem = a.terms();
    bool terminated = false;
    while (true) {
        // Drop cancelled entries.
        while (!rem.empty() && rem.begin()->second == 0) {
            rem.erase(rem.begin());
        }
        if (rem.empty()) {
            terminated = true;
            break;
        }
        const int e = rem.begin()->first - m;
        if (trunc && e >= *trunc) {
            break;
        }
        if (!trunc && e > *exact_bound) {
            break;
        }
        const Rational q = rem.begin()->second / lead;
        quotient[e] += q;
        for (const auto &[eb, cb] : b.terms()) {
            rem[e + eb] -= q * cb;
        }
    }
    if (!trunc && !terminated) {
        // Not a Laurent polynomial: expand the series up to the fallback order.
        trunc = fallback_trunc;
        quotient.clear();
        rem = a.terms();
        while (true) {
            while (!rem.empty() && rem.begin()->second == 0) {
                rem.erase(rem.begin());
            }
            if (rem.empty() || rem.begin()->first - m >= *trunc) {
                break;
            }
            const int e = rem.begin()->first - m;
            const Rational q = rem.begin()->second / lead;
            quotient[e] += q;
            for (const auto &[eb, cb] : b.terms()) {
                rem[e + eb] -= q * cb;
            }
        }
        if (quotient.empty() && vq >= *trunc) {
            throw Error(ErrorKind::TruncationExhausted, "quotient lies entirely beyond O(t^" + std::to_string(*trunc) + ")");
        }
    }
    return LaurentSeries(std::move(quotient), trunc);
}

/// True when a and b agree on every exponent below both truncation orders.
inline bool agrees(const LaurentSeries &a, const LaurentSeries &b)
{
    std::optional<int> window = LaurentSeries::min_order(a.trunc_order(), b.trunc_order());
    LaurentSeries diff = a - b;
    if (!window) {
        return diff.is_zero();
    }
    return std::all_of(diff.terms().begin(), diff.terms().end(),
                       [&](const auto &term) { return term.first >= *window; });
}

namespace detail {

inline std::string format_term(const Rational &abs_coeff, int exponent)
{
    if (exponent == 0) {
        return to_string(abs_coeff);
    }
    std::string power = exponent == 1 ? "t" : "t^" + std::to_string(exponent);
    if (abs_coeff == 1) {
        return power;
    }
    if (is_integer(abs_coeff)) {
        return to_string(abs_coeff) + power;
    }
    return to_string(abs_coeff) + "*" + power;
}

} // namespace detail

/// Literal form, e.g. `3t^-2 + 5 + 7t`, `-1/2*t^-1 + O(t^4)`.
inline std::string to_string(const LaurentSeries &s)
{
    std::string out;
    bool first = true;
    for (const auto &[e, c] : s.terms()) {
        Rational mag = abs(c);
        if (first) {
            out += (c < 0 ? "-" : "") + detail::format_term(mag, e);
        } else {
            out += (c < 0 ? " - " : " + ") + detail::format_term(mag, e);
        }
        first = false;
    }
    if (s.trunc_order()) {
        std::string big_o = "O(t^" + std::to_string(*s.trunc_order()) + ")";
        out += first ? big_o : " + " + big_o;
        first = false;
    }
    return first ? "0" : out;
}

inline std::ostream &operator<<(std::ostream &os, const LaurentSeries &s)
{
    return os << to_string(s);
}

/// Parses the series literal grammar: a sum of terms `c*t^k`, `ct^k`, `t^k`,
/// `t` or a bare rational, optionally ending in `O(t^k)`. Whitespace is
/// insignificant. `default_trunc` applies when no O-term is present.
inline LaurentSeries parse_series(std::string_view text, std::optional<int> default_trunc = std::nullopt)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s.push_back(ch);
        }
    }
    std::size_t pos = 0;
    auto fail = [&](const std::string &why) {
        return Error(ErrorKind::ParseError,
                     why + " at position " + std::to_string(pos) + " in series '" + std::string(text) + "'");
    };
    auto read_int = [&]() {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            ++pos;
        }
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
        if (pos == digits) {
            throw fail("expected integer");
        }
        return std::stoi(s.substr(start, pos - start));
    };

    if (s.empty()) {
        throw fail("empty series");
    }
    LaurentSeries::Terms terms;
    std::optional<int> explicit_trunc;
    std::map<int, std::size_t> term_pos;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw fail("expected '+' or '-'");
        }
        first = false;
        if (explicit_trunc) {
            throw fail("term after O(...)");
        }
        if (s.compare(pos, 4, "O(t^") == 0) {
            pos += 4;
            int order = read_int();
            if (pos >= s.size() || s[pos] != ')') {
                throw fail("expected ')'");
            }
            ++pos;
            explicit_trunc = order;
            continue;
        }
        Rational coeff(1);
        bool have_coeff = false;
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) {
            ++pos;
        }
        if (pos > start) {
            try {
                coeff = parse_rational(s.substr(start, pos - start));
            } catch (const Error &e) {
                pos = start;
                throw fail(e.what());
            }
            have_coeff = true;
        }
        bool star = false;
        if (pos < s.size() && s[pos] == '*') {
            star = true;
            ++pos;
        }
        int exponent = 0;
        if (pos < s.size() && s[pos] == 't') {
            ++pos;
            exponent = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                exponent = read_int();
            }
        } else if (star || !have_coeff) {
            throw fail("expected 't'");
        }
        terms[exponent] += sign * coeff;
        term_pos.try_emplace(exponent, start);
    }
    std::optional<int> trunc = explicit_trunc ? explicit_trunc : default_trunc;
    if (trunc) {
        for (const auto &[e, c] : terms) {
            if (c != 0 && e >= *trunc) {
                pos = term_pos.at(e);
                throw fail("term t^" + std::to_string(e) + " lies beyond O(t^" + std::to_string(*trunc) + ")");
            }
        }
    }
    return LaurentSeries(std::move(terms), trunc);
}

} // namespace birkhoff
