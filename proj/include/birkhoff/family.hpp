#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "linear.hpp"

namespace birkhoff {

/// A filtered coalgebra (optionally a bialgebra) presented by a set of
/// combinatorial basis elements.
///
/// Implementations supply the coproduct, an exact degree per basis element
/// and, where available, the product and the in/out maps. Degree-0 elements
/// must be exactly the group-like ones and the complements of the filtration
/// are the spans of exact-degree basis elements, so they lie in Ker(counit).
/// Families are immutable after construction; internal caches are
/// insert-once and safe for concurrent readers.
class Family
{
public:
    virtual ~Family() = default;

    virtual std::string name() const = 0;

    /// Parses an element literal into its canonical key.
    virtual BasisKey parse(std::string_view literal) const = 0;

    virtual std::string display(const BasisKey &key) const
    {
        return key.empty() ? "1" : key;
    }

    /// Throws UnknownElement if `key` does not denote a basis element.
    virtual void validate(const BasisKey &key) const = 0;

    virtual TensorSum coproduct(const BasisKey &key) const = 0;

    virtual int degree(const BasisKey &key) const = 0;

    virtual Rational counit(const BasisKey &key) const
    {
        return degree(key) == 0 ? Rational(1) : Rational(0);
    }

    /// Cheap structural test; `is_grouplike` in coalgebra.hpp cross-checks it
    /// against the coproduct.
    virtual bool structurally_grouplike(const BasisKey &key) const
    {
        return degree(key) == 0;
    }

    /// Basis elements of degree <= max_degree, ordered by degree and then by
    /// key. Families with infinitely many elements per degree enumerate a
    /// bounded sample documented by the implementation.
    virtual std::vector<BasisKey> enumerate(int max_degree) const = 0;

    virtual bool has_product() const
    {
        return false;
    }

    virtual BasisKey unit() const
    {
        throw Error(ErrorKind::NoProduct, name() + " has no product");
    }

    virtual BasisKey multiply(const BasisKey &, const BasisKey &) const
    {
        throw Error(ErrorKind::NoProduct, name() + " has no product");
    }

    /// Connected components of a monomial; empty for the unit.
    virtual std::vector<BasisKey> factors(const BasisKey &) const
    {
        throw Error(ErrorKind::NoProduct, name() + " has no product");
    }

    virtual bool has_in_out() const
    {
        return false;
    }

    virtual BasisKey in_map(const BasisKey &) const
    {
        throw Error(ErrorKind::NoInOut, name() + " provides no in/out maps");
    }

    virtual BasisKey out_map(const BasisKey &) const
    {
        throw Error(ErrorKind::NoInOut, name() + " provides no in/out maps");
    }

    /// Connected generators up to the given degree (product families only).
    std::vector<BasisKey> generators(int max_degree) const
    {
        std::vector<BasisKey> out;
        for (const auto &key : enumerate(max_degree)) {
            if (factors(key).size() == 1) {
                out.push_back(key);
            }
        }
        return out;
    }
};

} // namespace birkhoff
