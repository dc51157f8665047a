#pragma once

#include <string>

#include "coalgebra.hpp"
#include "functional.hpp"

namespace birkhoff {

namespace detail {

inline bool is_one(const LaurentSeries &v)
{
    return agrees(v, LaurentSeries::constant(1));
}

// Nonzero and supported in exponent 0 on its known window.
inline bool is_unit_constant(const LaurentSeries &v)
{
    return v.terms().size() == 1 && v.terms().begin()->first == 0 && (!v.trunc_order() || *v.trunc_order() > 0);
}

inline void require_normalized(const Functional &f, const BasisKey &g)
{
    if (!is_one(f(g))) {
        throw Error(ErrorKind::NotNormalized, f.label() + "(" + f.family().display(g) + ") = " + to_string(f(g))
                                                  + " but group-like elements must map to 1");
    }
}

} // namespace detail

/// phi~ = phi / (phi o res). Families without in/out maps have no residue;
/// there phi itself is returned and must already be 1 on group-likes.
inline Functional calibrate(const Functional &phi)
{
    if (!phi.family().has_in_out()) {
        return phi;
    }
    const int fallback = phi.target().trunc_order.value_or(8);
    return Functional::derived(phi.family_ptr(), phi.target(), phi.label() + "~",
                               [phi, fallback](const Functional &, const BasisKey &x) {
                                   const Family &fam = phi.family();
                                   const BasisKey res = fam.out_map(x);
                                   const LaurentSeries divisor = phi(res);
                                   if (divisor.is_zero()) {
                                       throw Error(ErrorKind::DivisibilityFailure,
                                                   "phi(res(" + fam.display(x) + ")) = phi(" + fam.display(res)
                                                       + ") vanishes");
                                   }
                                   if (res == x) {
                                       return LaurentSeries::constant(1);
                                   }
                                   try {
                                       return series_div(phi(x), divisor, fallback);
                                   } catch (const Error &e) {
                                       throw Error(ErrorKind::DivisibilityFailure, "phi(res(" + fam.display(x)
                                                                                       + ")) does not divide phi("
                                                                                       + fam.display(x) + "): " + e.what());
                                   }
                               });
}

/// Bogoliubov counterterm of an already calibrated rule:
///   phi- = e + R(phi- * (e - phi~)),
/// evaluated by recursion on degree. Group-likes map to 1, and for
/// deg x > 0 only terms x' (x) x'' with deg x'' > 0 contribute; those have
/// deg x' < deg x.
inline Functional counterterm_of_calibrated(const Functional &calibrated)
{
    return Functional::derived(
        calibrated.family_ptr(), calibrated.target(), "phi-", [calibrated](const Functional &self, const BasisKey &x) {
            const Family &fam = self.family();
            const int n = fam.degree(x);
            if (n == 0) {
                detail::require_normalized(calibrated, x);
                return LaurentSeries::constant(1);
            }
            LaurentSeries sum;
            for (const TensorSum coproduct_ = fam.coproduct(x); const auto &[k, c] : coproduct_.terms()) {
                const auto &[left, right] = k;
                if (fam.degree(right) == 0) {
                    // (e - phi~) vanishes on group-likes.
                    detail::require_normalized(calibrated, right);
                    continue;
                }
                if (fam.degree(left) >= n) {
                    throw Error(ErrorKind::InvalidFiltration, "coproduct of " + fam.display(x) + " has term "
                                                                  + fam.display(left) + " (x) " + fam.display(right)
                                                                  + " violating the degree splitting");
                }
                const LaurentSeries e_right = LaurentSeries::constant(fam.counit(right));
                sum += c * (self(left) * (e_right - calibrated(right)));
            }
            return rb_project(sum, self.target());
        });
}

inline Functional counterterm(const Functional &phi)
{
    return counterterm_of_calibrated(calibrate(phi));
}

/// phi+ = phi- * phi. For deg x > 0 the value must lie in A+ = Ker R;
/// otherwise PolePartResidual is raised. Under minimal subtraction the
/// group-like values phi(out x) must be nonzero constants.
inline Functional renormalized_of(const Functional &phi, const Functional &minus)
{
    return Functional::derived(phi.family_ptr(), phi.target(), "phi+",
                               [phi, minus](const Functional &self, const BasisKey &x) {
                                   const Family &fam = self.family();
                                   LaurentSeries value = convolve(minus, phi, x);
                                   if (fam.degree(x) == 0) {
                                       return value;
                                   }
                                   if (self.target().kind == RBTarget::Kind::minimal_subtraction && fam.has_in_out()) {
                                       const BasisKey out = fam.out_map(x);
                                       if (!detail::is_unit_constant(phi(out))) {
                                           throw Error(ErrorKind::NonConstantUnit,
                                                       "phi(" + fam.display(out) + ") = " + to_string(phi(out))
                                                           + " is not a nonzero constant");
                                       }
                                   }
                                   const LaurentSeries residual = rb_project(value, self.target());
                                   if (!residual.is_zero()) {
                                       throw Error(ErrorKind::PolePartResidual, "R(phi+(" + fam.display(x)
                                                                                    + ")) = " + to_string(residual));
                                   }
                                   return value;
                               });
}

inline Functional renormalized(const Functional &phi)
{
    return renormalized_of(phi, counterterm(phi));
}

/// The pieces of one renormalisation run sharing their memo caches.
struct Renormalization {
    Functional phi;
    Functional calibrated;
    Functional minus;
    Functional plus;

    explicit Renormalization(const Functional &rule)
        : phi(rule), calibrated(calibrate(rule)), minus(counterterm_of_calibrated(calibrated)),
          plus(renormalized_of(rule, minus))
    {
    }
};

/// Convolution inverse of a rule that is 1 on group-likes, by the degree
/// recursion equivalent to sum_n (e - f)^{*n}:
///   f^{-1}(x) = e(x) + sum over delta(x), deg x' > 0, of (e - f)(x') f^{-1}(x'').
inline Functional convolution_inverse(const Functional &f)
{
    return Functional::derived(f.family_ptr(), f.target(), f.label() + "^-1",
                               [f](const Functional &self, const BasisKey &x) {
                                   const Family &fam = self.family();
                                   const int n = fam.degree(x);
                                   if (n == 0) {
                                       detail::require_normalized(f, x);
                                       return LaurentSeries::constant(1);
                                   }
                                   LaurentSeries sum;
                                   for (const TensorSum coproduct_ = fam.coproduct(x); const auto &[k, c] : coproduct_.terms()) {
                                       const auto &[left, right] = k;
                                       if (fam.degree(left) == 0) {
                                           detail::require_normalized(f, left);
                                           continue;
                                       }
                                       if (fam.degree(right) >= n) {
                                           throw Error(ErrorKind::InvalidFiltration,
                                                       "coproduct of " + fam.display(x) + " violates the degree splitting");
                                       }
                                       const LaurentSeries e_left = LaurentSeries::constant(fam.counit(left));
                                       sum += c * ((e_left - f(left)) * self(right));
                                   }
                                   return sum;
                               });
}

/// phi(1) = 1 and phi(xy) = phi(x) phi(y) for all enumerated basis pairs of
/// total degree <= bound.
inline bool is_character(const Functional &phi, int bound)
{
    const Family &fam = phi.family();
    if (!fam.has_product()) {
        throw Error(ErrorKind::NoProduct, fam.name() + " has no product");
    }
    if (!detail::is_one(phi(fam.unit()))) {
        return false;
    }
    const auto elements = fam.enumerate(bound);
    for (const auto &x : elements) {
        for (const auto &y : elements) {
            if (fam.degree(x) + fam.degree(y) > bound) {
                continue;
            }
            if (!agrees(phi(fam.multiply(x, y)), phi(x) * phi(y))) {
                return false;
            }
        }
    }
    return true;
}

/// phi(x) - ((phi-)^{-1} * phi+)(x); zero on its window when the Birkhoff
/// factorization holds at x.
inline LaurentSeries birkhoff_residual(const Functional &phi, const Functional &minus_inverse, const Functional &plus,
                                       const BasisKey &x)
{
    return phi(x) - convolve(minus_inverse, plus, x);
}

/// Verifies phi- * phi = phi+ and phi = (phi-)^{-1} * phi+ on every
/// enumerated element of degree <= bound.
inline bool birkhoff_check(const Functional &phi, int bound)
{
    Renormalization run(phi);
    const Functional inverse = convolution_inverse(run.minus);
    for (const auto &x : phi.family().enumerate(bound)) {
        if (!agrees(run.plus(x), convolve(run.minus, phi, x))) {
            return false;
        }
        const LaurentSeries residual = birkhoff_residual(phi, inverse, run.plus, x);
        if (!residual.is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace birkhoff
