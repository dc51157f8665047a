#pragma once

#include <functional>
#include <string>
#include <vector>

#include "family.hpp"
#include "linear.hpp"

namespace birkhoff {

inline TensorSum delta(const Family &family, const BasisKey &x)
{
    family.validate(x);
    return family.coproduct(x);
}

inline int degree(const Family &family, const BasisKey &x)
{
    return family.degree(x);
}

/// Projection of delta(x) onto B(p) (x) B(q).
inline TensorSum delta_component(const Family &family, const BasisKey &x, int p, int q)
{
    TensorSum out;
    for (const TensorSum coproduct_ = delta(family, x); const auto &[k, c] : coproduct_.terms()) {
        if (family.degree(k.first) == p && family.degree(k.second) == q) {
            out.add(k.first, k.second, c);
        }
    }
    return out;
}

/// Coproduct of a degree-n element split as
///   delta_{0,n}(x) + middle + delta_{n,0}(x)
/// with every middle term of bidegree (p, q), 0 < p, q < n. Terms that fit
/// none of the three parts land in `stray`; it is empty when degree 0 holds only group-likes.
struct SplitCoproduct {
    int degree = 0;
    TensorSum left_skew;  // delta_{0,n}
    TensorSum middle;
    TensorSum right_skew; // delta_{n,0}
    TensorSum stray;
};

inline SplitCoproduct split_coproduct(const Family &family, const BasisKey &x)
{
    SplitCoproduct out;
    const int n = family.degree(x);
    out.degree = n;
    for (const TensorSum coproduct_ = delta(family, x); const auto &[k, c] : coproduct_.terms()) {
        const int p = family.degree(k.first);
        const int q = family.degree(k.second);
        if (n == 0) {
            // The whole coproduct of a group-like element is skew.
            out.left_skew.add(k.first, k.second, c);
            out.right_skew.add(k.first, k.second, c);
        } else if (p == 0 && q == n) {
            out.left_skew.add(k.first, k.second, c);
        } else if (p == n && q == 0) {
            out.right_skew.add(k.first, k.second, c);
        } else if (p > 0 && q > 0 && p < n && q < n && p + q <= n) {
            out.middle.add(k.first, k.second, c);
        } else {
            out.stray.add(k.first, k.second, c);
        }
    }
    return out;
}

/// Every term of delta(x) has deg(left) + deg(right) <= deg(x).
inline bool check_splitting_bound(const Family &family, const BasisKey &x)
{
    const int n = family.degree(x);
    for (const TensorSum coproduct_ = delta(family, x); const auto &[k, c] : coproduct_.terms()) {
        if (family.degree(k.first) + family.degree(k.second) > n) {
            return false;
        }
    }
    return true;
}

inline bool is_grouplike(const Family &family, const BasisKey &x)
{
    const TensorSum d = delta(family, x);
    return d.size() == 1 && d.coefficient(x, x) == 1 && family.counit(x) == 1;
}

/// Linear map applied factorwise: (f (x) g)(sum).
inline TensorSum map_tensor(const TensorSum &t, const std::function<LinComb(const BasisKey &)> &left,
                            const std::function<LinComb(const BasisKey &)> &right)
{
    TensorSum out;
    for (const auto &[k, c] : t.terms()) {
        const LinComb l = left(k.first);
        const LinComb r = right(k.second);
        for (const auto &[lk, lc] : l.terms()) {
            for (const auto &[rk, rc] : r.terms()) {
                out.add(lk, rk, c * lc * rc);
            }
        }
    }
    return out;
}

/// (delta (x) id) delta(x) == (id (x) delta) delta(x), and both counit laws.
inline bool check_coalgebra_axioms(const Family &family, const BasisKey &x)
{
    const TensorSum d = delta(family, x);
    TripleTensor lhs;
    TripleTensor rhs;
    for (const auto &[k, c] : d.terms()) {
        for (const TensorSum coproduct_ = family.coproduct(k.first); const auto &[k2, c2] : coproduct_.terms()) {
            lhs.add(k2.first, k2.second, k.second, c * c2);
        }
        for (const TensorSum coproduct_ = family.coproduct(k.second); const auto &[k2, c2] : coproduct_.terms()) {
            rhs.add(k.first, k2.first, k2.second, c * c2);
        }
    }
    if (!(lhs == rhs)) {
        return false;
    }
    LinComb left_counit;
    LinComb right_counit;
    for (const auto &[k, c] : d.terms()) {
        left_counit.add(k.second, c * family.counit(k.first));
        right_counit.add(k.first, c * family.counit(k.second));
    }
    const LinComb expected(x);
    return left_counit == expected && right_counit == expected;
}

/// Product of two tensors in B (x) B: (a (x) b)(c (x) d) = ac (x) bd.
inline TensorSum tensor_multiply(const Family &family, const TensorSum &a, const TensorSum &b)
{
    TensorSum out;
    for (const auto &[ka, ca] : a.terms()) {
        for (const auto &[kb, cb] : b.terms()) {
            out.add(family.multiply(ka.first, kb.first), family.multiply(ka.second, kb.second), ca * cb);
        }
    }
    return out;
}

/// delta(xy) == delta(x) delta(y).
inline bool check_bialgebra_compat(const Family &family, const BasisKey &x, const BasisKey &y)
{
    if (!family.has_product()) {
        throw Error(ErrorKind::NoProduct, family.name() + " has no product");
    }
    return delta(family, family.multiply(x, y)) == tensor_multiply(family, delta(family, x), delta(family, y));
}

/// delta_{0,n}(x) = in(x) (x) x and delta_{n,0}(x) = x (x) out(x), with in(x)
/// and out(x) group-like.
inline bool check_in_out_terms(const Family &family, const BasisKey &x)
{
    if (!family.has_in_out()) {
        throw Error(ErrorKind::NoInOut, family.name() + " provides no in/out maps");
    }
    const int n = family.degree(x);
    const BasisKey in = family.in_map(x);
    const BasisKey out = family.out_map(x);
    if (!is_grouplike(family, in) || !is_grouplike(family, out)) {
        return false;
    }
    if (n == 0) {
        return in == x && out == x;
    }
    TensorSum expected_in;
    expected_in.add(in, x, 1);
    TensorSum expected_out;
    expected_out.add(x, out, 1);
    return delta_component(family, x, 0, n) == expected_in && delta_component(family, x, n, 0) == expected_out;
}

/// in and out are idempotent; on product families they are also monoid
/// homomorphisms, checked here against every given partner y.
inline bool check_in_out_maps(const Family &family, const BasisKey &x, const std::vector<BasisKey> &partners = {})
{
    const BasisKey in = family.in_map(x);
    const BasisKey out = family.out_map(x);
    if (family.in_map(in) != in || family.out_map(out) != out) {
        return false;
    }
    if (!family.has_product()) {
        return true;
    }
    if (family.in_map(family.unit()) != family.unit() || family.out_map(family.unit()) != family.unit()) {
        return false;
    }
    for (const auto &y : partners) {
        const BasisKey xy = family.multiply(x, y);
        if (family.in_map(xy) != family.multiply(in, family.in_map(y))
            || family.out_map(xy) != family.multiply(out, family.out_map(y))) {
            return false;
        }
    }
    return true;
}

/// Linear extension of x -> out(x): the algebra map B -> B_0.
inline LinComb residue(const Family &family, const LinComb &v)
{
    if (!family.has_in_out()) {
        throw Error(ErrorKind::NoInOut, family.name() + " provides no in/out maps");
    }
    LinComb out;
    for (const auto &[k, c] : v.terms()) {
        out.add(family.out_map(k), c);
    }
    return out;
}

/// Image in H = B/I, I generated by 1 - g for group-like g: every group-like
/// factor of a monomial is replaced by the unit.
inline BasisKey collapse_grouplikes(const Family &family, const BasisKey &x)
{
    if (!family.has_product()) {
        throw Error(ErrorKind::NoProduct, family.name() + " has no product");
    }
    BasisKey out = family.unit();
    for (const auto &f : family.factors(x)) {
        if (!family.structurally_grouplike(f)) {
            out = family.multiply(out, f);
        }
    }
    return out;
}

inline LinComb collapse_grouplikes(const Family &family, const LinComb &v)
{
    LinComb out;
    for (const auto &[k, c] : v.terms()) {
        out.add(collapse_grouplikes(family, k), c);
    }
    return out;
}

inline TensorSum collapse_grouplikes(const Family &family, const TensorSum &t)
{
    auto collapse = [&](const BasisKey &k) { return LinComb(collapse_grouplikes(family, k)); };
    return map_tensor(t, collapse, collapse);
}

/// The quotient coproduct is well defined on x:
///   (c (x) c) delta(x) == (c (x) c) delta(c(x)).
inline bool check_collapse_coalgebra_map(const Family &family, const BasisKey &x)
{
    return collapse_grouplikes(family, delta(family, x))
        == collapse_grouplikes(family, delta(family, collapse_grouplikes(family, x)));
}

} // namespace birkhoff
