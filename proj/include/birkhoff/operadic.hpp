#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bck.hpp"
#include "forest.hpp"

namespace birkhoff {

/// Bialgebra of operadic forests: rooted trees with open-ended leaf and
/// root edges.
///
/// Grammar: tree := "|" | "(" tree* ")". "|" is the bare edge, a child "|"
/// is a leaf input and "()" is a node without inputs. Degree is the number
/// of nodes, so the nodeless forests (products of bare edges) are exactly
/// the group-like elements. in(x) has one bare edge per leaf and out(x) one
/// per root.
///
/// The basis is infinite in every degree (arities are unbounded). The
/// constructor bounds only what `enumerate` returns: node arity at most
/// `max_arity` and at most `max_bare` bare-edge components per forest.
class OperadicFamily : public ForestFamily
{
public:
    explicit OperadicFamily(int max_arity = 2, int max_bare = 1) : max_arity_(max_arity), max_bare_(max_bare) {}

    std::string name() const override
    {
        return "operadic";
    }

    BasisKey parse(std::string_view literal) const override
    {
        return forest::join(forest::parse_trees(literal, true));
    }

    void validate(const BasisKey &key) const override
    {
        if (key.empty()) {
            return;
        }
        BasisKey canonical;
        try {
            canonical = parse(key);
        } catch (const Error &) {
            throw Error(ErrorKind::UnknownElement, "not an operadic forest: '" + key + "'");
        }
        if (canonical != key) {
            throw Error(ErrorKind::UnknownElement,
                        "non-canonical operadic forest '" + key + "' (canonical: '" + canonical + "')");
        }
    }

    bool structurally_grouplike(const BasisKey &key) const override
    {
        return key.find('(') == std::string::npos;
    }

    bool has_in_out() const override
    {
        return true;
    }

    BasisKey in_map(const BasisKey &x) const override
    {
        const auto leaves = std::count(x.begin(), x.end(), '|');
        return forest::join(std::vector<std::string>(static_cast<std::size_t>(leaves), "|"));
    }

    BasisKey out_map(const BasisKey &x) const override
    {
        return forest::join(std::vector<std::string>(forest::split(x).size(), "|"));
    }

    int max_arity() const noexcept
    {
        return max_arity_;
    }

    /// Trees with exactly n >= 1 nodes and node arity <= max_arity.
    std::vector<std::string> trees(int n) const
    {
        if (n <= 0) {
            return {};
        }
        std::vector<std::pair<std::string, int>> items{{"|", 0}};
        for (int k = 1; k < n; ++k) {
            for (const auto &t : trees(k)) {
                items.emplace_back(t, k);
            }
        }
        std::sort(items.begin(), items.end());
        std::vector<std::string> out;
        for (int arity = 0; arity <= max_arity_; ++arity) {
            std::vector<std::vector<std::string>> kid_sets;
            forest::multisets(items, n - 1, arity, kid_sets);
            for (auto &kids : kid_sets) {
                out.push_back(forest::node(std::move(kids)));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<BasisKey> enumerate(int max_degree) const override
    {
        std::vector<std::pair<std::string, int>> items;
        for (int k = 1; k <= max_degree; ++k) {
            for (const auto &t : trees(k)) {
                items.emplace_back(t, k);
            }
        }
        std::sort(items.begin(), items.end());
        std::vector<BasisKey> out;
        for (int d = 0; d <= max_degree; ++d) {
            std::vector<std::vector<std::string>> sets;
            if (d == 0) {
                sets.emplace_back();
            } else {
                forest::multisets(items, d, -1, sets);
            }
            std::vector<BasisKey> level;
            for (const auto &s : sets) {
                for (int bare = 0; bare <= max_bare_; ++bare) {
                    std::vector<std::string> trees = s;
                    trees.insert(trees.end(), static_cast<std::size_t>(bare), "|");
                    level.push_back(forest::join(std::move(trees)));
                }
            }
            std::sort(level.begin(), level.end());
            out.insert(out.end(), level.begin(), level.end());
        }
        return out;
    }

protected:
    // Sum over bottom subtrees C (closed towards the root, containing the
    // root edge) of (forest hanging from the leaf edges of C) (x) C.
    TensorSum tree_coproduct(const std::string &tree) const override
    {
        TensorSum out;
        for (const auto &[cut, mult] : bottoms(tree)) {
            out.add(forest::join(cut.first), cut.second, mult);
        }
        return out;
    }

private:
    using Bottom = std::pair<std::vector<std::string>, std::string>; // (hanging trees, C)

    static std::map<Bottom, long> bottoms(const std::string &tree)
    {
        std::map<Bottom, long> out;
        // C = the root edge alone: the whole tree hangs from it.
        out[Bottom{{tree}, "|"}] += 1;
        if (tree == "|") {
            return out;
        }
        std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, long> partial;
        partial[{{}, {}}] = 1;
        for (const auto &child : forest::children(tree)) {
            const auto child_bottoms = bottoms(child);
            std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, long> next;
            for (const auto &[state, mult] : partial) {
                for (const auto &[cb, cmult] : child_bottoms) {
                    auto grown = state;
                    grown.first.insert(grown.first.end(), cb.first.begin(), cb.first.end());
                    std::sort(grown.first.begin(), grown.first.end());
                    grown.second.push_back(cb.second);
                    std::sort(grown.second.begin(), grown.second.end());
                    next[grown] += mult * cmult;
                }
            }
            partial = std::move(next);
        }
        for (const auto &[state, mult] : partial) {
            out[Bottom{state.first, forest::node(state.second)}] += mult;
        }
        return out;
    }

    int max_arity_;
    int max_bare_;
};

/// Core of an operadic tree: the combinatorial tree on the same nodes,
/// forgetting leaves and root edge. Nodeless trees go to the empty forest.
inline std::string core_tree(const std::string &tree)
{
    if (tree == "|") {
        return {};
    }
    std::vector<std::string> kids;
    for (const auto &child : forest::children(tree)) {
        if (child != "|") {
            kids.push_back(core_tree(child));
        }
    }
    return forest::node(std::move(kids));
}

/// Operadic forest -> BCK forest, multiplicatively.
inline BasisKey core_map(const BasisKey &operadic_forest)
{
    std::vector<std::string> cores;
    for (const auto &tree : forest::split(operadic_forest)) {
        cores.push_back(core_tree(tree));
    }
    return forest::join(std::move(cores));
}

inline TensorSum core_map(const TensorSum &t)
{
    auto core = [](const BasisKey &k) { return LinComb(core_map(k)); };
    return map_tensor(t, core, core);
}

/// (core (x) core) delta_operadic(x) == delta_bck(core(x)).
inline bool check_core_homomorphism(const OperadicFamily &operadic, const BckFamily &bck, const BasisKey &x)
{
    return core_map(delta(operadic, x)) == delta(bck, core_map(x));
}

} // namespace birkhoff
