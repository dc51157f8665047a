#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forest.hpp"

namespace birkhoff {

/// Butcher-Connes-Kreimer bialgebra of combinatorial rooted forests.
///
/// Trees use the grammar tree := "(" tree* ")", so "()" is the single node
/// and "(())" the two-node tree. The coproduct sums over admissible cuts
/// (at most one deleted edge on every path from the root), with the crown
/// forest on the left and the trunk containing the root on the right. The
/// only group-like element is the empty forest.
class BckFamily : public ForestFamily
{
public:
    std::string name() const override
    {
        return "bck";
    }

    BasisKey parse(std::string_view literal) const override
    {
        return forest::join(forest::parse_trees(literal, false));
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
            throw Error(ErrorKind::UnknownElement, "not a BCK forest: '" + key + "'");
        }
        if (canonical != key) {
            throw Error(ErrorKind::UnknownElement, "non-canonical BCK forest '" + key + "' (canonical: '" + canonical + "')");
        }
    }

    // Connected: the unit is the only group-like, so in = out = 1.
    bool has_in_out() const override
    {
        return true;
    }

    BasisKey in_map(const BasisKey &) const override
    {
        return unit();
    }

    BasisKey out_map(const BasisKey &) const override
    {
        return unit();
    }

    /// All rooted trees with exactly n nodes, sorted.
    std::vector<std::string> trees(int n) const
    {
        if (n <= 0) {
            return {};
        }
        std::vector<std::pair<std::string, int>> items;
        for (int k = 1; k < n; ++k) {
            for (const auto &t : trees(k)) {
                items.emplace_back(t, k);
            }
        }
        std::sort(items.begin(), items.end());
        std::vector<std::vector<std::string>> kid_sets;
        forest::multisets(items, n - 1, -1, kid_sets);
        std::vector<std::string> out;
        for (auto &kids : kid_sets) {
            out.push_back(forest::node(std::move(kids)));
        }
        std::sort(out.begin(), out.end());
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
        std::vector<BasisKey> out{unit()};
        for (int d = 1; d <= max_degree; ++d) {
            std::vector<std::vector<std::string>> sets;
            forest::multisets(items, d, -1, sets);
            std::vector<BasisKey> level;
            for (auto &s : sets) {
                level.push_back(forest::join(std::move(s)));
            }
            std::sort(level.begin(), level.end());
            out.insert(out.end(), level.begin(), level.end());
        }
        return out;
    }

protected:
    TensorSum tree_coproduct(const std::string &tree) const override
    {
        TensorSum out;
        out.add(tree, unit(), 1);
        for (const auto &[cut, mult] : trunk_cuts(tree)) {
            out.add(forest::join(cut.first), cut.second, mult);
        }
        return out;
    }

private:
    using Cut = std::pair<std::vector<std::string>, std::string>; // (crown trees, trunk)

    // Admissible cuts that keep the root, as (crown, trunk) with
    // multiplicities. The empty cut gives (empty crown, tree).
    static std::map<Cut, long> trunk_cuts(const std::string &tree)
    {
        // Partial results: crown trees so far and the trunk children so far.
        std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, long> partial;
        partial[{{}, {}}] = 1;
        for (const auto &child : forest::children(tree)) {
            const auto child_cuts = trunk_cuts(child);
            std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, long> next;
            for (const auto &[state, mult] : partial) {
                // Delete the edge to this child: the whole child joins the crown.
                auto cut_here = state;
                cut_here.first.push_back(child);
                std::sort(cut_here.first.begin(), cut_here.first.end());
                next[cut_here] += mult;
                // Keep the edge: recurse into the child.
                for (const auto &[cc, cmult] : child_cuts) {
                    auto keep = state;
                    keep.first.insert(keep.first.end(), cc.first.begin(), cc.first.end());
                    std::sort(keep.first.begin(), keep.first.end());
                    keep.second.push_back(cc.second);
                    std::sort(keep.second.begin(), keep.second.end());
                    next[keep] += mult * cmult;
                }
            }
            partial = std::move(next);
        }
        std::map<Cut, long> out;
        for (const auto &[state, mult] : partial) {
            out[Cut{state.first, forest::node(state.second)}] += mult;
        }
        return out;
    }
};

} // namespace birkhoff
