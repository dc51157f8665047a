#pragma once

#include <functional>
#include <optional>
#include <string>

#include "error.hpp"
#include "series.hpp"

namespace birkhoff {

/// Target algebra A together with its idempotent projector R.
///
/// `minimal_subtraction`: A is truncated Laurent series and R takes the pole
/// part, so A- = Im R holds the strictly negative powers and A+ = Ker R the
/// rest. `trivial`: A is the ground field (constant series) with R = id, so
/// A+ = {0}. `custom` carries any user supplied idempotent linear projector;
/// it is only guaranteed to be Rota-Baxter if the caller makes it so.
struct RBTarget {
    enum class Kind { minimal_subtraction, trivial, custom };

    Kind kind = Kind::minimal_subtraction;
    std::optional<int> trunc_order = 8;
    std::function<LaurentSeries(const LaurentSeries &)> projector;
    std::string label;

    static RBTarget minimal_subtraction(std::optional<int> trunc = 8)
    {
        return RBTarget{Kind::minimal_subtraction, trunc, {}, "ms"};
    }

    static RBTarget trivial()
    {
        return RBTarget{Kind::trivial, std::nullopt, {}, "trivial"};
    }

    static RBTarget custom(std::function<LaurentSeries(const LaurentSeries &)> projector, std::string label,
                           std::optional<int> trunc = 8)
    {
        return RBTarget{Kind::custom, trunc, std::move(projector), std::move(label)};
    }

    std::string name() const
    {
        return label;
    }
};

/// Pole part of a: every term with strictly negative exponent. The result
/// is exact; it needs a to be known at least up to t^0.
inline LaurentSeries pole_part(const LaurentSeries &a)
{
    if (a.trunc_order() && *a.trunc_order() < 0) {
        throw Error(ErrorKind::TruncationExhausted,
                    "pole part undetermined: series known only up to O(t^" + std::to_string(*a.trunc_order()) + ")");
    }
    LaurentSeries::Terms poles;
    for (const auto &[e, c] : a.terms()) {
        if (e >= 0) {
            break;
        }
        poles.emplace(e, c);
    }
    return LaurentSeries(std::move(poles), std::nullopt);
}

inline LaurentSeries rb_project(const LaurentSeries &a, const RBTarget &target)
{
    switch (target.kind) {
        case RBTarget::Kind::minimal_subtraction: return pole_part(a);
        case RBTarget::Kind::trivial: return a;
        case RBTarget::Kind::custom: return target.projector(a);
    }
    return a;
}

/// House convention for the weight-one Rota-Baxter identity:
///   R(x)R(y) = R(R(x)y) + R(xR(y)) - R(xy).
/// Compares both sides on their common window.
inline bool rb_identity_check(const LaurentSeries &x, const LaurentSeries &y, const RBTarget &target)
{
    const LaurentSeries rx = rb_project(x, target);
    const LaurentSeries ry = rb_project(y, target);
    const LaurentSeries lhs = rx * ry;
    const LaurentSeries rhs =
        rb_project(rx * y, target) + rb_project(x * ry, target) - rb_project(x * y, target);
    return agrees(lhs, rhs);
}

} // namespace birkhoff
