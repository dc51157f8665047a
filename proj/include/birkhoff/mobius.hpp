#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "incidence.hpp"
#include "renorm.hpp"

namespace birkhoff {

inline Functional zeta(std::shared_ptr<const Family> family)
{
    return Functional::zeta(std::move(family), RBTarget::trivial());
}

/// Mobius function as the counterterm of zeta for the trivial target
/// (A = k, R = id): mu = e + mu * (e - zeta).
class Mobius
{
public:
    explicit Mobius(std::shared_ptr<const Family> family) : zeta_(zeta(family)), run_(zeta_) {}

    Rational operator()(const BasisKey &x) const
    {
        return run_.minus(x).coeff(0);
    }

    const Functional &functional() const noexcept
    {
        return run_.minus;
    }

    /// zeta renormalised: phi+ = mu * zeta.
    const Functional &renormalized_zeta() const noexcept
    {
        return run_.plus;
    }

    const Functional &zeta_functional() const noexcept
    {
        return zeta_;
    }

private:
    Functional zeta_;
    Renormalization run_;
};

inline Rational mobius(std::shared_ptr<const Family> family, const BasisKey &x)
{
    return Mobius(std::move(family))(x);
}

/// Classical recursion mu(id) = 1, mu(x) = -sum over b o a = x, b != id of
/// mu(a), read directly off the composition data. Shares nothing with the
/// coproduct or convolution code.
class MobiusOracle
{
public:
    explicit MobiusOracle(const IncidenceFamily &family) : family_(family) {}

    Rational operator()(const BasisKey &x) const
    {
        family_.validate(x);
        std::lock_guard lock(mutex_);
        return eval(x);
    }

private:
    Rational eval(const BasisKey &x) const
    {
        if (auto it = memo_.find(x); it != memo_.end()) {
            return it->second;
        }
        Rational value;
        if (const auto *cat_family = dynamic_cast<const CategoryFamily *>(&family_)) {
            const FiniteCategory &cat = cat_family->category();
            if (cat.is_identity(x)) {
                value = 1;
            } else {
                if (!in_progress_.insert(x).second) {
                    throw Error(ErrorKind::NonMobius, "Mobius recursion revisits " + x);
                }
                for (const auto &a : cat.arrows()) {
                    if (cat.source(a) != cat.source(x)) {
                        continue;
                    }
                    for (const auto &b : cat.arrows()) {
                        if (cat.is_identity(b) || cat.source(b) != cat.target(a) || cat.target(b) != cat.target(x)) {
                            continue;
                        }
                        if (cat.compose(b, a) == x) {
                            value -= eval(a);
                        }
                    }
                }
                in_progress_.erase(x);
            }
        } else if (dynamic_cast<const NatFamily *>(&family_)) {
            const long n = NatFamily::value(x);
            if (n == 0) {
                value = 1;
            } else {
                for (long a = 0; a < n; ++a) {
                    value -= eval(std::to_string(a));
                }
            }
        } else {
            throw Error(ErrorKind::UnknownElement, "no Mobius oracle for family " + family_.name());
        }
        memo_.emplace(x, value);
        return value;
    }

    const IncidenceFamily &family_;
    mutable std::mutex mutex_;
    mutable std::map<BasisKey, Rational> memo_;
    mutable std::set<BasisKey> in_progress_;
};

inline Rational mobius_oracle(const IncidenceFamily &family, const BasisKey &x)
{
    return MobiusOracle(family)(x);
}

/// mu * zeta = e = zeta * mu on all enumerated elements of degree <= bound.
inline bool inversion_check(std::shared_ptr<const Family> family, int bound)
{
    Mobius mu(family);
    const Functional z = mu.zeta_functional();
    const Functional e = counit_functional(family, RBTarget::trivial());
    for (const auto &x : family->enumerate(bound)) {
        const LaurentSeries expected = e(x);
        if (!(convolve(mu.functional(), z, x) == expected) || !(convolve(z, mu.functional(), x) == expected)) {
            return false;
        }
    }
    return true;
}

} // namespace birkhoff
