#pragma once

// Independent reference implementations used as test oracles. None of this
// calls the library's coproduct, convolution or Mobius code.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <birkhoff/birkhoff.hpp>

namespace oracle {

using birkhoff::Rational;
using Tensor = std::map<std::pair<std::string, std::string>, Rational>;

// Explicit node structure of one tree. For operadic trees, leaf inputs are
// counted per node instead of stored as nodes.
struct Tree {
    std::vector<int> parent;
    std::vector<std::vector<int>> kids;
    std::vector<int> leaves;
    bool bare = false; // the operadic bare edge "|"
};

inline Tree parse_tree(const std::string &code)
{
    Tree t;
    if (code == "|") {
        t.bare = true;
        return t;
    }
    std::vector<int> stack;
    for (char ch : code) {
        if (ch == '(') {
            const int id = static_cast<int>(t.parent.size());
            t.parent.push_back(stack.empty() ? -1 : stack.back());
            t.kids.emplace_back();
            t.leaves.push_back(0);
            if (!stack.empty()) {
                t.kids[stack.back()].push_back(id);
            }
            stack.push_back(id);
        } else if (ch == ')') {
            stack.pop_back();
        } else if (ch == '|') {
            ++t.leaves[stack.back()];
        }
    }
    return t;
}

inline std::string join(std::vector<std::string> parts)
{
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto &p : parts) {
        if (p.empty()) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += p;
    }
    return out;
}

// Code of the subtree at v keeping only nodes with keep[node]; dropped
// children become "|" when `dropped_as_edge` is set and vanish otherwise.
inline std::string code(const Tree &t, int v, const std::vector<bool> &keep, bool dropped_as_edge)
{
    std::vector<std::string> parts(static_cast<std::size_t>(t.leaves[v]), "|");
    for (int c : t.kids[v]) {
        if (keep[c]) {
            parts.push_back(code(t, c, keep, dropped_as_edge));
        } else if (dropped_as_edge) {
            parts.emplace_back("|");
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto &p : parts) {
        out += p;
    }
    return out + ")";
}

inline bool is_ancestor(const Tree &t, int a, int v)
{
    for (int p = t.parent[v]; p >= 0; p = t.parent[p]) {
        if (p == a) {
            return true;
        }
    }
    return false;
}

/// BCK coproduct of one tree by enumerating every subset of edges and
/// keeping the admissible ones (no cut edge below another).
inline Tensor bck_tree_coproduct(const std::string &tree_code)
{
    const Tree t = parse_tree(tree_code);
    const int n = static_cast<int>(t.parent.size());
    Tensor out;
    out[{tree_code, ""}] += 1;
    // Edge c is the edge from parent(c) to c; the root has no edge.
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (mask & 1u) {
            continue; // node 0 is the root
        }
        std::vector<int> cut;
        for (int c = 1; c < n; ++c) {
            if (mask & (1u << c)) {
                cut.push_back(c);
            }
        }
        bool admissible = true;
        for (int a : cut) {
            for (int b : cut) {
                if (a != b && is_ancestor(t, a, b)) {
                    admissible = false;
                }
            }
        }
        if (!admissible) {
            continue;
        }
        std::vector<bool> all(static_cast<std::size_t>(n), true);
        std::vector<bool> trunk(static_cast<std::size_t>(n), true);
        std::vector<std::string> crown;
        for (int c : cut) {
            crown.push_back(code(t, c, all, false));
            for (int v = 0; v < n; ++v) {
                if (v == c || is_ancestor(t, c, v)) {
                    trunk[v] = false;
                }
            }
        }
        out[{join(crown), code(t, 0, trunk, false)}] += 1;
    }
    return out;
}

/// Operadic coproduct of one tree by enumerating every node subset closed
/// towards the root (the empty set is the bare root edge).
inline Tensor operadic_tree_coproduct(const std::string &tree_code)
{
    const Tree t = parse_tree(tree_code);
    Tensor out;
    if (t.bare) {
        out[{"|", "|"}] += 1;
        return out;
    }
    const int n = static_cast<int>(t.parent.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<bool> in(static_cast<std::size_t>(n));
        bool closed = true;
        for (int v = 0; v < n; ++v) {
            in[v] = (mask >> v) & 1u;
        }
        for (int v = 0; v < n; ++v) {
            if (in[v] && t.parent[v] >= 0 && !in[t.parent[v]]) {
                closed = false;
            }
        }
        if (!closed) {
            continue;
        }
        if (mask == 0) {
            out[{tree_code, "|"}] += 1;
            continue;
        }
        std::vector<bool> all(static_cast<std::size_t>(n), true);
        std::vector<std::string> hanging;
        for (int v = 0; v < n; ++v) {
            if (!in[v]) {
                continue;
            }
            hanging.insert(hanging.end(), static_cast<std::size_t>(t.leaves[v]), "|");
            for (int c : t.kids[v]) {
                if (!in[c]) {
                    hanging.push_back(code(t, c, all, true));
                }
            }
        }
        out[{join(hanging), code(t, 0, in, true)}] += 1;
    }
    return out;
}

inline Tensor to_tensor(const birkhoff::TensorSum &s)
{
    Tensor out;
    for (const auto &[k, c] : s.terms()) {
        out[k] = c;
    }
    return out;
}

/// Number-theoretic Mobius function.
inline int mobius_number(long n)
{
    int sign = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return 0;
            }
            sign = -sign;
        }
    }
    if (n > 1) {
        sign = -sign;
    }
    return sign;
}

/// Mobius function of a chain interval [i, j].
inline int mobius_chain(int i, int j)
{
    if (i == j) {
        return 1;
    }
    return j == i + 1 ? -1 : 0;
}

/// Mobius function of a Boolean lattice interval [S, T], given by (-1)^|T \ S|.
inline int mobius_boolean(int size_difference)
{
    return size_difference % 2 == 0 ? 1 : -1;
}

} // namespace oracle

namespace fixtures {

struct Named {
    std::string name;
    std::shared_ptr<const birkhoff::CategoryFamily> family;
};

inline std::shared_ptr<const birkhoff::CategoryFamily> category(birkhoff::FiniteCategory cat, const std::string &name)
{
    return std::make_shared<const birkhoff::CategoryFamily>(std::move(cat), name);
}

/// Every bundled finite incidence fixture.
inline std::vector<Named> incidence()
{
    using namespace birkhoff;
    return {
        {"chain-4", category(chain_poset(4), "chain-4")},
        {"chain-6", category(chain_poset(6), "chain-6")},
        {"divisors-12", category(divisor_poset(12), "divisors-12")},
        {"divisors-30", category(divisor_poset(30), "divisors-30")},
        {"divisors-60", category(divisor_poset(60), "divisors-60")},
        {"boolean-3", category(boolean_lattice(3), "boolean-3")},
        {"chains-3x3", category(chain_product(3, 3), "chains-3x3")},
        {"remark", category(remark_fixture(), "remark")},
    };
}

} // namespace fixtures
