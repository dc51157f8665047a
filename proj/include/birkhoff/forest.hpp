#pragma once

#include <algorithm>
#include <cctype>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coalgebra.hpp"
#include "family.hpp"

namespace birkhoff {

namespace forest {

// A forest key is the sorted multiset of its tree codes joined by single
// spaces; tree codes never contain spaces. The empty string is the empty
// forest, the unit of the product.

inline std::vector<std::string> split(const BasisKey &forest)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < forest.size()) {
        std::size_t end = forest.find(' ', start);
        if (end == std::string::npos) {
            end = forest.size();
        }
        out.emplace_back(forest.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

inline BasisKey join(std::vector<std::string> trees)
{
    std::sort(trees.begin(), trees.end());
    BasisKey out;
    for (const auto &t : trees) {
        if (t.empty()) {
            continue;
        }
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += t;
    }
    return out;
}

inline BasisKey multiply(const BasisKey &a, const BasisKey &b)
{
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    std::vector<std::string> trees = split(a);
    std::vector<std::string> more = split(b);
    trees.insert(trees.end(), more.begin(), more.end());
    return join(std::move(trees));
}

/// Canonical code of a node with the given child codes.
inline std::string node(std::vector<std::string> children)
{
    std::sort(children.begin(), children.end());
    std::string out = "(";
    for (const auto &c : children) {
        out += c;
    }
    out += ")";
    return out;
}

/// Child codes of a node code "(...)". A child is either "|" or a balanced
/// parenthesised block.
inline std::vector<std::string> children(std::string_view code)
{
    std::vector<std::string> out;
    std::size_t i = 1;
    while (i + 1 < code.size()) {
        if (code[i] == '|') {
            out.emplace_back("|");
            ++i;
            continue;
        }
        std::size_t start = i;
        int depth = 0;
        do {
            if (code[i] == '(') {
                ++depth;
            } else if (code[i] == ')') {
                --depth;
            }
            ++i;
        } while (depth > 0);
        out.emplace_back(code.substr(start, i - start));
    }
    return out;
}

inline int count_nodes(std::string_view code)
{
    return static_cast<int>(std::count(code.begin(), code.end(), '('));
}

/// Parses a whitespace-insensitive sequence of trees over the grammar
///   tree := "(" tree* ")"            (allow_bare = false)
///   tree := "|" | "(" tree* ")"      (allow_bare = true)
/// into canonical tree codes. The literal "1" denotes the empty forest.
inline std::vector<std::string> parse_trees(std::string_view literal, bool allow_bare)
{
    std::string s;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < literal.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(literal[i]))) {
            s.push_back(literal[i]);
            origin.push_back(i);
        }
    }
    if (s == "1") {
        return {};
    }
    auto fail = [&](std::size_t pos, const std::string &why) {
        std::size_t at = pos < origin.size() ? origin[pos] : literal.size();
        return Error(ErrorKind::ParseError,
                     why + " at position " + std::to_string(at) + " in '" + std::string(literal) + "'");
    };
    std::size_t pos = 0;
    // Recursive descent returning the canonical code of one tree.
    auto parse_tree = [&](auto &&self) -> std::string {
        if (pos >= s.size()) {
            throw fail(pos, "unexpected end of input");
        }
        if (s[pos] == '|') {
            if (!allow_bare) {
                throw fail(pos, "unexpected '|'");
            }
            ++pos;
            return "|";
        }
        if (s[pos] != '(') {
            throw fail(pos, std::string("unexpected '") + s[pos] + "'");
        }
        ++pos;
        std::vector<std::string> kids;
        while (true) {
            if (pos >= s.size()) {
                throw fail(pos, "unbalanced '('");
            }
            if (s[pos] == ')') {
                ++pos;
                break;
            }
            kids.push_back(self(self));
        }
        return node(std::move(kids));
    };
    std::vector<std::string> trees;
    while (pos < s.size()) {
        trees.push_back(parse_tree(parse_tree));
    }
    if (trees.empty()) {
        throw fail(0, "empty literal");
    }
    return trees;
}

/// All multisets of exactly `size` items (or of any size when size < 0)
/// drawn from `items` whose weights sum to `total`. Items must be sorted;
/// each multiset comes out sorted.
inline void multisets(const std::vector<std::pair<std::string, int>> &items, int total, int size,
                      std::vector<std::vector<std::string>> &out)
{
    std::vector<std::string> current;
    auto rec = [&](auto &&self, std::size_t from, int remaining) -> void {
        const int count = static_cast<int>(current.size());
        if (remaining == 0 && (size < 0 || count == size)) {
            out.push_back(current);
        }
        if (size >= 0 && count == size) {
            return;
        }
        for (std::size_t i = from; i < items.size(); ++i) {
            if (items[i].second > remaining) {
                continue;
            }
            if (items[i].second == 0 && size < 0) {
                // Weightless items would make unbounded multisets.
                continue;
            }
            current.push_back(items[i].first);
            self(self, i, remaining - items[i].second);
            current.pop_back();
        }
    };
    rec(rec, 0, total);
}

} // namespace forest

/// Shared machinery for forest bialgebras: free commutative algebra on
/// connected trees with the coproduct extended multiplicatively from trees.
class ForestFamily : public Family
{
public:
    bool has_product() const override
    {
        return true;
    }

    BasisKey unit() const override
    {
        return BasisKey{};
    }

    BasisKey multiply(const BasisKey &a, const BasisKey &b) const override
    {
        return forest::multiply(a, b);
    }

    std::vector<BasisKey> factors(const BasisKey &x) const override
    {
        return forest::split(x);
    }

    int degree(const BasisKey &x) const override
    {
        return forest::count_nodes(x);
    }

    std::string display(const BasisKey &key) const override
    {
        return key.empty() ? "1" : key;
    }

    TensorSum coproduct(const BasisKey &x) const override
    {
        TensorSum out;
        out.add(unit(), unit(), 1);
        for (const auto &tree : forest::split(x)) {
            out = tensor_multiply(*this, out, tree_coproduct_cached(tree));
        }
        return out;
    }

protected:
    virtual TensorSum tree_coproduct(const std::string &tree) const = 0;

    const TensorSum &tree_coproduct_cached(const std::string &tree) const
    {
        {
            std::lock_guard lock(cache_mutex_);
            auto it = cache_.find(tree);
            if (it != cache_.end()) {
                return it->second;
            }
        }
        TensorSum computed = tree_coproduct(tree);
        std::lock_guard lock(cache_mutex_);
        return cache_.try_emplace(tree, std::move(computed)).first->second;
    }

private:
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::string, TensorSum> cache_;
};

} // namespace birkhoff
