#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "family.hpp"

namespace birkhoff {

/// A finite category given by objects, arrows and a composition table.
/// Identities are named explicitly per object and compose implicitly.
class FiniteCategory
{
public:
    struct Arrow {
        std::string source;
        std::string target;
    };

    void add_object(const std::string &object, const std::string &identity_name)
    {
        if (objects_.count(object)) {
            throw Error(ErrorKind::ParseError, "duplicate object '" + object + "'");
        }
        objects_.emplace(object, identity_name);
        add_arrow_unchecked(identity_name, object, object);
        identities_.insert(identity_name);
    }

    void add_arrow(const std::string &name, const std::string &source, const std::string &target)
    {
        if (!objects_.count(source) || !objects_.count(target)) {
            throw Error(ErrorKind::ParseError, "arrow '" + name + "' has an unknown endpoint");
        }
        add_arrow_unchecked(name, source, target);
    }

    /// Records g o f = h.
    void set_composite(const std::string &g, const std::string &f, const std::string &h)
    {
        for (const auto *name : {&g, &f, &h}) {
            if (!arrows_.count(*name)) {
                throw Error(ErrorKind::ParseError, "composite mentions unknown arrow '" + *name + "'");
            }
        }
        if (arrows_.at(g).source != arrows_.at(f).target) {
            throw Error(ErrorKind::ParseError, "arrows " + g + " and " + f + " are not composable");
        }
        if (arrows_.at(h).source != arrows_.at(f).source || arrows_.at(h).target != arrows_.at(g).target) {
            throw Error(ErrorKind::ParseError, "composite " + g + " o " + f + " = " + h + " has the wrong type");
        }
        if (is_identity(g) || is_identity(f)) {
            const std::string &expected = is_identity(g) ? f : g;
            if (h != expected) {
                throw Error(ErrorKind::ParseError, "composite with an identity must be the other arrow: " + g + " o " + f);
            }
            return;
        }
        auto [it, inserted] = table_.try_emplace({g, f}, h);
        if (!inserted && it->second != h) {
            throw Error(ErrorKind::ParseError, "conflicting composites for " + g + " o " + f);
        }
    }

    std::optional<std::string> compose(const std::string &g, const std::string &f) const
    {
        if (arrows_.at(g).source != arrows_.at(f).target) {
            return std::nullopt;
        }
        if (is_identity(g)) {
            return f;
        }
        if (is_identity(f)) {
            return g;
        }
        auto it = table_.find({g, f});
        if (it == table_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    bool has_arrow(const std::string &name) const
    {
        return arrows_.count(name) != 0;
    }

    bool is_identity(const std::string &name) const
    {
        return identities_.count(name) != 0;
    }

    const std::string &identity(const std::string &object) const
    {
        return objects_.at(object);
    }

    const std::string &source(const std::string &arrow) const
    {
        return arrows_.at(arrow).source;
    }

    const std::string &target(const std::string &arrow) const
    {
        return arrows_.at(arrow).target;
    }

    /// Arrow names in insertion order.
    const std::vector<std::string> &arrows() const noexcept
    {
        return order_;
    }

    std::vector<std::string> objects() const
    {
        std::vector<std::string> out;
        for (const auto &[o, id] : objects_) {
            out.push_back(o);
        }
        return out;
    }

    /// Checks that composition is total on composable pairs and associative.
    void validate() const
    {
        for (const auto &f : order_) {
            for (const auto &g : order_) {
                if (source(g) == target(f) && !compose(g, f)) {
                    throw Error(ErrorKind::ParseError, "missing composite " + g + " o " + f);
                }
            }
        }
        for (const auto &f : order_) {
            for (const auto &g : order_) {
                if (source(g) != target(f)) {
                    continue;
                }
                const std::string gf = *compose(g, f);
                for (const auto &h : order_) {
                    if (source(h) != target(g)) {
                        continue;
                    }
                    if (*compose(h, gf) != *compose(*compose(h, g), f)) {
                        throw Error(ErrorKind::NonAssociative,
                                    "(" + h + " o " + g + ") o " + f + " != " + h + " o (" + g + " o " + f + ")");
                    }
                }
            }
        }
    }

private:
    void add_arrow_unchecked(const std::string &name, const std::string &source, const std::string &target)
    {
        if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
            throw Error(ErrorKind::ParseError, "invalid arrow name '" + name + "'");
        }
        if (!arrows_.emplace(name, Arrow{source, target}).second) {
            throw Error(ErrorKind::ParseError, "duplicate arrow '" + name + "'");
        }
        order_.push_back(name);
    }

    std::map<std::string, std::string> objects_; // object -> identity arrow
    std::map<std::string, Arrow> arrows_;
    std::vector<std::string> order_;
    std::set<std::string> identities_;
    std::map<std::pair<std::string, std::string>, std::string> table_;
};

/// Incidence coalgebra of a Mobius category: basis = arrows,
///   delta(f) = sum over b o a = f of a (x) b,
/// filtered by the maximal length of an effective chain composing to f.
/// in(f) = id_source(f) and out(f) = id_target(f).
class IncidenceFamily : public Family
{
public:
    /// Pairs (a, b) with b o a = f, identities included.
    virtual std::vector<std::pair<BasisKey, BasisKey>> factorizations(const BasisKey &f) const = 0;

    TensorSum coproduct(const BasisKey &f) const override
    {
        TensorSum out;
        for (const auto &[a, b] : factorizations(f)) {
            out.add(a, b, 1);
        }
        return out;
    }

    bool has_in_out() const override
    {
        return true;
    }
};

/// Incidence coalgebra of a finite category. Degrees are computed and the
/// Mobius condition verified at construction.
class CategoryFamily : public IncidenceFamily
{
public:
    CategoryFamily(FiniteCategory category, std::string name) : category_(std::move(category)), name_(std::move(name))
    {
        category_.validate();
        for (const auto &f : category_.arrows()) {
            for (const auto &g : category_.arrows()) {
                if (category_.source(g) == category_.target(f)) {
                    index_[*category_.compose(g, f)].emplace_back(f, g);
                }
            }
        }
        for (auto &[h, pairs] : index_) {
            std::sort(pairs.begin(), pairs.end());
        }
        compute_degrees();
    }

    std::string name() const override
    {
        return name_;
    }

    const FiniteCategory &category() const noexcept
    {
        return category_;
    }

    BasisKey parse(std::string_view literal) const override
    {
        std::string s;
        for (char ch : literal) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                s.push_back(ch);
            }
        }
        validate(s);
        return s;
    }

    void validate(const BasisKey &key) const override
    {
        if (!category_.has_arrow(key)) {
            throw Error(ErrorKind::UnknownElement, "no arrow named '" + key + "' in " + name_);
        }
    }

    std::vector<std::pair<BasisKey, BasisKey>> factorizations(const BasisKey &f) const override
    {
        validate(f);
        auto it = index_.find(f);
        return it == index_.end() ? std::vector<std::pair<BasisKey, BasisKey>>{} : it->second;
    }

    int degree(const BasisKey &f) const override
    {
        validate(f);
        return degrees_.at(f);
    }

    bool structurally_grouplike(const BasisKey &f) const override
    {
        return category_.is_identity(f);
    }

    BasisKey in_map(const BasisKey &f) const override
    {
        return category_.identity(category_.source(f));
    }

    BasisKey out_map(const BasisKey &f) const override
    {
        return category_.identity(category_.target(f));
    }

    std::vector<BasisKey> enumerate(int max_degree) const override
    {
        std::vector<BasisKey> out;
        for (const auto &f : category_.arrows()) {
            if (degrees_.at(f) <= max_degree) {
                out.push_back(f);
            }
        }
        std::sort(out.begin(), out.end(), [&](const BasisKey &a, const BasisKey &b) {
            return std::pair(degrees_.at(a), a) < std::pair(degrees_.at(b), b);
        });
        return out;
    }

private:
    // Longest effective chain by memoized recursion over effective
    // factorizations. An identity with an effective factorization, or a
    // recursion that revisits an arrow on the stack, means chains of
    // unbounded length.
    void compute_degrees()
    {
        std::set<std::string> on_stack;
        auto effective = [&](const std::string &f) {
            std::vector<std::pair<std::string, std::string>> out;
            auto it = index_.find(f);
            if (it != index_.end()) {
                for (const auto &[a, b] : it->second) {
                    if (!category_.is_identity(a) && !category_.is_identity(b)) {
                        out.emplace_back(a, b);
                    }
                }
            }
            return out;
        };
        auto rec = [&](auto &&self, const std::string &f) -> int {
            if (auto it = degrees_.find(f); it != degrees_.end()) {
                return it->second;
            }
            if (category_.is_identity(f)) {
                auto eff = effective(f);
                if (!eff.empty()) {
                    throw Error(ErrorKind::NonMobius, "identity " + f + " factors as " + eff.front().second + " o "
                                                          + eff.front().first + " in " + name_);
                }
                degrees_[f] = 0;
                return 0;
            }
            if (!on_stack.insert(f).second) {
                throw Error(ErrorKind::NonMobius, "unbounded effective chains through arrow " + f + " in " + name_);
            }
            int best = 1;
            for (const auto &[a, b] : effective(f)) {
                best = std::max(best, self(self, a) + self(self, b));
            }
            on_stack.erase(f);
            degrees_[f] = best;
            return best;
        };
        for (const auto &f : category_.arrows()) {
            rec(rec, f);
        }
    }

    FiniteCategory category_;
    std::string name_;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> index_;
    std::map<std::string, int> degrees_;
};

/// The additive monoid N as a one-object category, generated lazily:
/// arrows are 0, 1, 2, ... with 0 the identity and delta(n) = sum a (x) b
/// over a + b = n.
class NatFamily : public IncidenceFamily
{
public:
    std::string name() const override
    {
        return "nat";
    }

    static long value(const BasisKey &key)
    {
        return std::stol(key);
    }

    BasisKey parse(std::string_view literal) const override
    {
        std::string s;
        for (char ch : literal) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                s.push_back(ch);
            }
        }
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw Error(ErrorKind::ParseError, "expected a natural number, got '" + std::string(literal) + "'");
        }
        return std::to_string(std::stol(s));
    }

    void validate(const BasisKey &key) const override
    {
        bool ok = !key.empty() && key.size() < 10
                  && std::all_of(key.begin(), key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })
                  && (key == "0" || key[0] != '0');
        if (!ok) {
            throw Error(ErrorKind::UnknownElement, "not an element of N: '" + key + "'");
        }
    }

    std::vector<std::pair<BasisKey, BasisKey>> factorizations(const BasisKey &n) const override
    {
        validate(n);
        const long v = value(n);
        std::vector<std::pair<BasisKey, BasisKey>> out;
        for (long a = 0; a <= v; ++a) {
            out.emplace_back(std::to_string(a), std::to_string(v - a));
        }
        return out;
    }

    int degree(const BasisKey &n) const override
    {
        validate(n);
        return static_cast<int>(value(n));
    }

    BasisKey in_map(const BasisKey &) const override
    {
        return "0";
    }

    BasisKey out_map(const BasisKey &) const override
    {
        return "0";
    }

    std::vector<BasisKey> enumerate(int max_degree) const override
    {
        std::vector<BasisKey> out;
        for (int n = 0; n <= max_degree; ++n) {
            out.push_back(std::to_string(n));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Loaders and built-in fixtures.

namespace detail {

inline std::vector<std::string> tokens(const std::string &line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

template <typename Handler>
void for_each_line(std::string_view text, Handler &&handle)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        auto toks = tokens(line);
        if (toks.empty()) {
            continue;
        }
        try {
            handle(toks, line);
        } catch (const Error &e) {
            throw Error(e.kind(), "line " + std::to_string(number) + ": " + e.what());
        }
    }
}

inline Error line_error(const std::string &line)
{
    return Error(ErrorKind::ParseError, "cannot parse '" + line + "'");
}

} // namespace detail

inline std::string interval_name(const std::string &x, const std::string &y)
{
    return "[" + x + "," + y + "]";
}

/// Category of a finite poset: one arrow [x,y] per pair x <= y.
/// `leq` must be reflexive, antisymmetric and transitive.
inline FiniteCategory poset_category(const std::vector<std::string> &elements,
                                     const std::function<bool(const std::string &, const std::string &)> &leq)
{
    FiniteCategory cat;
    for (const auto &x : elements) {
        cat.add_object(x, interval_name(x, x));
    }
    for (const auto &x : elements) {
        for (const auto &y : elements) {
            if (x != y && leq(x, y)) {
                cat.add_arrow(interval_name(x, y), x, y);
            }
        }
    }
    for (const auto &x : elements) {
        for (const auto &y : elements) {
            for (const auto &z : elements) {
                if (x != y && y != z && leq(x, y) && leq(y, z)) {
                    cat.set_composite(interval_name(y, z), interval_name(x, y), interval_name(x, z));
                }
            }
        }
    }
    return cat;
}

/// Poset file: `elem <name>` and `cover <a> < <b>` lines. The order is the
/// reflexive-transitive closure of the covers; a cycle is rejected.
inline FiniteCategory load_poset(std::string_view text)
{
    std::vector<std::string> elements;
    std::set<std::string> known;
    std::vector<std::pair<std::string, std::string>> covers;
    detail::for_each_line(text, [&](const std::vector<std::string> &t, const std::string &line) {
        if (t.size() == 2 && t[0] == "elem") {
            if (!known.insert(t[1]).second) {
                throw Error(ErrorKind::ParseError, "duplicate element '" + t[1] + "'");
            }
            elements.push_back(t[1]);
        } else if (t.size() == 4 && t[0] == "cover" && t[2] == "<") {
            if (!known.count(t[1]) || !known.count(t[3])) {
                throw Error(ErrorKind::ParseError, "cover mentions an undeclared element");
            }
            covers.emplace_back(t[1], t[3]);
        } else {
            throw detail::line_error(line);
        }
    });
    std::map<std::string, std::set<std::string>> above;
    for (const auto &x : elements) {
        above[x].insert(x);
    }
    // Transitive closure by repeated relaxation; small inputs only.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &[a, b] : covers) {
            for (const auto &x : elements) {
                if (above[x].count(a)) {
                    for (const auto &y : std::set<std::string>(above[b])) {
                        changed |= above[x].insert(y).second;
                    }
                }
            }
        }
    }
    for (const auto &[a, b] : covers) {
        if (above[b].count(a)) {
            throw Error(ErrorKind::NotAPoset, "cover " + a + " < " + b + " closes a cycle");
        }
    }
    return poset_category(elements, [&](const std::string &x, const std::string &y) { return above[x].count(y) != 0; });
}

/// Monoid file: `elem <name>` lines, one `unit <name>` line and a full table
/// of `mul <x> <y> = <z>` lines (x.y = z, read as the composite x o y) for
/// all non-unit x, y.
inline FiniteCategory load_monoid(std::string_view text)
{
    std::vector<std::string> elements;
    std::optional<std::string> unit;
    std::vector<std::vector<std::string>> products;
    detail::for_each_line(text, [&](const std::vector<std::string> &t, const std::string &line) {
        if (t.size() == 2 && t[0] == "elem") {
            elements.push_back(t[1]);
        } else if (t.size() == 2 && t[0] == "unit") {
            unit = t[1];
        } else if (t.size() == 5 && t[0] == "mul" && t[3] == "=") {
            products.push_back(t);
        } else {
            throw detail::line_error(line);
        }
    });
    if (!unit || std::find(elements.begin(), elements.end(), *unit) == elements.end()) {
        throw Error(ErrorKind::ParseError, "monoid needs a declared unit element");
    }
    FiniteCategory cat;
    cat.add_object("*", *unit);
    for (const auto &e : elements) {
        if (e != *unit) {
            cat.add_arrow(e, "*", "*");
        }
    }
    for (const auto &p : products) {
        cat.set_composite(p[1], p[2], p[4]);
    }
    return cat;
}

/// Category file: `obj <name>`, `arr <name>: <src> -> <tgt>` and
/// `comp <g> <f> = <h>` (g o f = h). Identities are implicit as id_<obj>.
inline FiniteCategory load_category(std::string_view text)
{
    FiniteCategory cat;
    detail::for_each_line(text, [&](std::vector<std::string> t, const std::string &line) {
        if (t.size() == 2 && t[0] == "obj") {
            cat.add_object(t[1], "id_" + t[1]);
        } else if (t[0] == "arr") {
            // Accept both "arr f: a -> b" and "arr f : a -> b".
            std::string rest = line.substr(line.find("arr") + 3);
            auto colon = rest.find(':');
            auto arrow = rest.find("->");
            if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
                throw detail::line_error(line);
            }
            auto name = detail::tokens(rest.substr(0, colon));
            auto src = detail::tokens(rest.substr(colon + 1, arrow - colon - 1));
            auto tgt = detail::tokens(rest.substr(arrow + 2));
            if (name.size() != 1 || src.size() != 1 || tgt.size() != 1) {
                throw detail::line_error(line);
            }
            cat.add_arrow(name[0], src[0], tgt[0]);
        } else if (t.size() == 5 && t[0] == "comp" && t[3] == "=") {
            cat.set_composite(t[1], t[2], t[4]);
        } else {
            throw detail::line_error(line);
        }
    });
    return cat;
}

/// Chain 0 < 1 < ... < n-1.
inline FiniteCategory chain_poset(int n)
{
    std::vector<std::string> elems;
    for (int i = 0; i < n; ++i) {
        elems.push_back(std::to_string(i));
    }
    return poset_category(elems, [](const std::string &x, const std::string &y) { return std::stoi(x) <= std::stoi(y); });
}

/// Divisors of n under divisibility.
inline FiniteCategory divisor_poset(long n)
{
    std::vector<std::string> elems;
    for (long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            elems.push_back(std::to_string(d));
        }
    }
    return poset_category(elems, [](const std::string &x, const std::string &y) { return std::stol(y) % std::stol(x) == 0; });
}

/// Subsets of {1..n} under inclusion, named like {}, {1}, {1,3}.
inline FiniteCategory boolean_lattice(int n)
{
    auto name = [n](unsigned mask) {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                s += (first ? "" : ",") + std::to_string(i + 1);
                first = false;
            }
        }
        return s + "}";
    };
    std::vector<std::string> elems;
    std::map<std::string, unsigned> masks;
    for (unsigned m = 0; m < (1u << n); ++m) {
        elems.push_back(name(m));
        masks[name(m)] = m;
    }
    return poset_category(elems, [&](const std::string &x, const std::string &y) {
        return (masks.at(x) & ~masks.at(y)) == 0;
    });
}

/// Product order on chains of lengths m and n; elements named (i,j).
inline FiniteCategory chain_product(int m, int n)
{
    std::vector<std::string> elems;
    std::map<std::string, std::pair<int, int>> coords;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            std::string e = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            elems.push_back(e);
            coords[e] = {i, j};
        }
    }
    return poset_category(elems, [&](const std::string &x, const std::string &y) {
        return coords.at(x).first <= coords.at(y).first && coords.at(x).second <= coords.at(y).second;
    });
}

/// Two routes from s to t: s -c1-> p -c2-> q -c3-> t and s -a-> m -b-> t,
/// both composing to the same arrow f. The longest effective chain for f
/// has length 3 while a (x) b splits as 1 + 1.
inline FiniteCategory remark_fixture()
{
    FiniteCategory cat;
    for (const char *o : {"s", "p", "q", "m", "t"}) {
        cat.add_object(o, std::string("id_") + o);
    }
    cat.add_arrow("c1", "s", "p");
    cat.add_arrow("c2", "p", "q");
    cat.add_arrow("c3", "q", "t");
    cat.add_arrow("a", "s", "m");
    cat.add_arrow("b", "m", "t");
    cat.add_arrow("c21", "s", "q");
    cat.add_arrow("c32", "p", "t");
    cat.add_arrow("f", "s", "t");
    cat.set_composite("c2", "c1", "c21");
    cat.set_composite("c3", "c2", "c32");
    cat.set_composite("c3", "c21", "f");
    cat.set_composite("c32", "c1", "f");
    cat.set_composite("b", "a", "f");
    return cat;
}

} // namespace birkhoff
