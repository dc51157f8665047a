#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "rational.hpp"

namespace birkhoff {

/// Canonical code of one combinatorial basis element. Two keys are equal iff
/// they denote the same element; the empty string is the unit of product
/// families (the empty forest).
using BasisKey = std::string;

/// Finite formal linear combination over the basis. Zero coefficients are
/// never stored.
class LinComb
{
public:
    using Terms = std::map<BasisKey, Rational>;

    LinComb() = default;

    explicit LinComb(const BasisKey &key, const Rational &coeff = 1)
    {
        add(key, coeff);
    }

    void add(const BasisKey &key, const Rational &coeff)
    {
        if (coeff == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(key, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    LinComb &operator+=(const LinComb &other)
    {
        for (const auto &[k, c] : other.terms_) {
            add(k, c);
        }
        return *this;
    }

    const Terms &terms() const noexcept
    {
        return terms_;
    }

    bool empty() const noexcept
    {
        return terms_.empty();
    }

    std::size_t size() const noexcept
    {
        return terms_.size();
    }

    friend bool operator==(const LinComb &, const LinComb &) = default;

private:
    Terms terms_;
};

/// Element of B (x) B written in the basis: (left, right) -> coefficient.
/// Equal pairs are merged on insertion; iteration order is deterministic.
class TensorSum
{
public:
    using Key = std::pair<BasisKey, BasisKey>;
    using Terms = std::map<Key, Rational>;

    void add(const BasisKey &left, const BasisKey &right, const Rational &coeff)
    {
        if (coeff == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(Key{left, right}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    TensorSum &operator+=(const TensorSum &other)
    {
        for (const auto &[k, c] : other.terms_) {
            add(k.first, k.second, c);
        }
        return *this;
    }

    const Terms &terms() const noexcept
    {
        return terms_;
    }

    bool empty() const noexcept
    {
        return terms_.empty();
    }

    std::size_t size() const noexcept
    {
        return terms_.size();
    }

    Rational coefficient(const BasisKey &left, const BasisKey &right) const
    {
        auto it = terms_.find(Key{left, right});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    friend bool operator==(const TensorSum &, const TensorSum &) = default;

private:
    Terms terms_;
};

/// Element of B (x) B (x) B, used for coassociativity checks.
class TripleTensor
{
public:
    using Key = std::tuple<BasisKey, BasisKey, BasisKey>;

    void add(const BasisKey &a, const BasisKey &b, const BasisKey &c, const Rational &coeff)
    {
        if (coeff == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(Key{a, b, c}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    const std::map<Key, Rational> &terms() const noexcept
    {
        return terms_;
    }

    friend bool operator==(const TripleTensor &, const TripleTensor &) = default;

private:
    std::map<Key, Rational> terms_;
};

} // namespace birkhoff
