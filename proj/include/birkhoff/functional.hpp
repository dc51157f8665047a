#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "family.hpp"
#include "rota_baxter.hpp"
#include "series.hpp"

namespace birkhoff {

/// An A-valued linear map on a family, evaluated lazily per basis element.
///
/// Values are memoized in a cache shared by all copies of the functional;
/// the cache is insert-once, so concurrent evaluation of distinct elements
/// gives the same results as sequential evaluation.
class Functional
{
public:
    enum class Extension {
        explicit_table, // value table on basis elements
        character,      // table on connected generators, extended multiplicatively
        constant_one,   // zeta
        counit,         // e = eta o epsilon
        derived,        // computed from other functionals
    };

    using Table = std::map<BasisKey, LaurentSeries>;
    using Evaluator = std::function<LaurentSeries(const Functional &self, const BasisKey &)>;

    /// Table-backed functional. In `character` mode only connected
    /// generators need entries; a missing group-like generator defaults to 1.
    static Functional from_table(std::shared_ptr<const Family> family, RBTarget target, Extension extension, Table values,
                                 std::string label = "phi")
    {
        if (extension != Extension::explicit_table && extension != Extension::character) {
            throw Error(ErrorKind::ParseError, "from_table needs the explicit or character extension");
        }
        if (extension == Extension::character && !family->has_product()) {
            throw Error(ErrorKind::NoProduct, family->name() + " has no product; character mode is unavailable");
        }
        if (target.kind == RBTarget::Kind::trivial) {
            for (const auto &[k, v] : values) {
                if (!v.is_constant()) {
                    throw Error(ErrorKind::ParseError,
                                "trivial target needs constant values; got " + to_string(v) + " for " + family->display(k));
                }
            }
        }
        auto table = std::make_shared<const Table>(std::move(values));
        Functional out(std::move(family), std::move(target), extension, std::move(label),
                       [table, extension](const Functional &self, const BasisKey &x) {
                           const Family &fam = self.family();
                           if (extension == Extension::explicit_table) {
                               auto it = table->find(x);
                               if (it == table->end()) {
                                   throw Error(ErrorKind::MissingValue, "no value for " + fam.display(x));
                               }
                               return it->second;
                           }
                           LaurentSeries value = LaurentSeries::constant(1);
                           for (const auto &g : fam.factors(x)) {
                               auto it = table->find(g);
                               if (it != table->end()) {
                                   value = value * it->second;
                               } else if (fam.degree(g) != 0) {
                                   throw Error(ErrorKind::MissingValue, "no value for generator " + fam.display(g));
                               }
                           }
                           return value;
                       });
        out.table_ = std::move(table);
        return out;
    }

    static Functional zeta(std::shared_ptr<const Family> family, RBTarget target = RBTarget::trivial())
    {
        return Functional(std::move(family), std::move(target), Extension::constant_one, "zeta",
                          [](const Functional &, const BasisKey &) { return LaurentSeries::constant(1); });
    }

    static Functional counit(std::shared_ptr<const Family> family, RBTarget target)
    {
        return Functional(std::move(family), std::move(target), Extension::counit, "e",
                          [](const Functional &self, const BasisKey &x) {
                              return LaurentSeries::constant(self.family().counit(x));
                          });
    }

    static Functional derived(std::shared_ptr<const Family> family, RBTarget target, std::string label,
                              Evaluator evaluator)
    {
        return Functional(std::move(family), std::move(target), Extension::derived, std::move(label),
                          std::move(evaluator));
    }

    LaurentSeries operator()(const BasisKey &x) const
    {
        {
            std::lock_guard lock(state_->mutex);
            auto it = state_->cache.find(x);
            if (it != state_->cache.end()) {
                return it->second;
            }
        }
        // Evaluate without holding the lock: evaluators recurse into this and
        // other functionals.
        LaurentSeries value = state_->evaluator(*this, x);
        std::lock_guard lock(state_->mutex);
        return state_->cache.try_emplace(x, std::move(value)).first->second;
    }

    const Family &family() const noexcept
    {
        return *state_->family;
    }

    const std::shared_ptr<const Family> &family_ptr() const noexcept
    {
        return state_->family;
    }

    const RBTarget &target() const noexcept
    {
        return state_->target;
    }

    Extension extension() const noexcept
    {
        return state_->extension;
    }

    const std::string &label() const noexcept
    {
        return state_->label;
    }

    /// The value table of table-backed functionals, else nullptr.
    const Table *table() const noexcept
    {
        return table_.get();
    }

    std::size_t cached_count() const
    {
        std::lock_guard lock(state_->mutex);
        return state_->cache.size();
    }

private:
    struct State {
        std::shared_ptr<const Family> family;
        RBTarget target;
        Extension extension;
        std::string label;
        Evaluator evaluator;
        mutable std::mutex mutex;
        std::unordered_map<BasisKey, LaurentSeries> cache;
    };

    Functional(std::shared_ptr<const Family> family, RBTarget target, Extension extension, std::string label,
               Evaluator evaluator)
        : state_(std::make_shared<State>())
    {
        state_->family = std::move(family);
        state_->target = std::move(target);
        state_->extension = extension;
        state_->label = std::move(label);
        state_->evaluator = std::move(evaluator);
    }

    std::shared_ptr<State> state_;
    std::shared_ptr<const Table> table_;
};

/// (f * g)(x) = sum over delta(x) of f(x') g(x'').
inline LaurentSeries convolve(const Functional &f, const Functional &g, const BasisKey &x)
{
    LaurentSeries sum;
    bool first = true;
    for (const TensorSum coproduct_ = f.family().coproduct(x); const auto &[k, c] : coproduct_.terms()) {
        LaurentSeries term = c * (f(k.first) * g(k.second));
        if (first) {
            sum = std::move(term);
            first = false;
        } else {
            sum += term;
        }
    }
    return sum;
}

inline Functional convolution(const Functional &f, const Functional &g)
{
    return Functional::derived(f.family_ptr(), f.target(), f.label() + "*" + g.label(),
                               [f, g](const Functional &, const BasisKey &x) { return convolve(f, g, x); });
}

inline Functional counit_functional(std::shared_ptr<const Family> family, RBTarget target)
{
    return Functional::counit(std::move(family), std::move(target));
}

} // namespace birkhoff
