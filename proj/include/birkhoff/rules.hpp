#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "functional.hpp"

namespace birkhoff {

enum class RuleMode { character, linear, zeta };

/// Parsed rule file. Header lines `mode = character | linear | zeta`,
/// `target = ms | trivial` and `trunc = <int>` may appear in any order before
/// or between the body lines `<element-literal> = <series-literal>`.
struct RuleFile {
    std::optional<RuleMode> mode;
    std::optional<RBTarget::Kind> target;
    std::optional<int> trunc;
    std::vector<std::pair<std::string, std::string>> entries; // raw literals in file order
};

inline RuleFile parse_rule_file(std::string_view text)
{
    RuleFile out;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.rfind('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": expected '<lhs> = <rhs>'");
        }
        const std::string lhs = trim(line.substr(0, eq));
        const std::string rhs = trim(line.substr(eq + 1));
        if (lhs == "mode") {
            if (rhs == "character") {
                out.mode = RuleMode::character;
            } else if (rhs == "linear") {
                out.mode = RuleMode::linear;
            } else if (rhs == "zeta") {
                out.mode = RuleMode::zeta;
            } else {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": unknown mode '" + rhs + "'");
            }
        } else if (lhs == "target") {
            if (rhs == "ms") {
                out.target = RBTarget::Kind::minimal_subtraction;
            } else if (rhs == "trivial") {
                out.target = RBTarget::Kind::trivial;
            } else {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": unknown target '" + rhs + "'");
            }
        } else if (lhs == "trunc") {
            try {
                out.trunc = std::stoi(rhs);
            } catch (const std::exception &) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": bad trunc '" + rhs + "'");
            }
        } else {
            if (lhs.empty() || rhs.empty()) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": empty side in '" + line + "'");
            }
            out.entries.emplace_back(lhs, rhs);
        }
    }
    return out;
}

/// Builds the functional described by a rule file. Values are known up to
/// the target's truncation order; the trivial target only accepts constants.
inline Functional load_rules(std::shared_ptr<const Family> family, const RuleFile &rules, const RBTarget &target)
{
    const RuleMode mode = rules.mode.value_or(RuleMode::linear);
    if (mode == RuleMode::zeta) {
        return Functional::zeta(family, target);
    }
    Functional::Table table;
    for (const auto &[lhs, rhs] : rules.entries) {
        const BasisKey key = family->parse(lhs);
        LaurentSeries value = parse_series(rhs, target.trunc_order);
        if (target.kind == RBTarget::Kind::trivial && !value.is_constant()) {
            throw Error(ErrorKind::ParseError, "trivial target forbids non-constant value " + rhs + " for " + lhs);
        }
        if (mode == RuleMode::character && family->factors(key).size() != 1) {
            throw Error(ErrorKind::ParseError, "character rules assign values to connected generators only: " + lhs);
        }
        if (!table.emplace(key, std::move(value)).second) {
            throw Error(ErrorKind::ParseError, "duplicate entry for " + lhs);
        }
    }
    return Functional::from_table(family, target,
                                  mode == RuleMode::character ? Functional::Extension::character
                                                              : Functional::Extension::explicit_table,
                                  std::move(table));
}

/// Seeded generator of small test rules. Uses only the raw mt19937_64 output
/// so sequences are identical across standard libraries.
class RuleSampler
{
public:
    explicit RuleSampler(std::uint64_t seed) : rng_(seed) {}

    long uniform(long lo, long hi)
    {
        return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational small_rational()
    {
        long num = uniform(-5, 5);
        long den = uniform(1, 3);
        return make_rational(num, den);
    }

    Rational nonzero_rational()
    {
        Rational r;
        do {
            r = small_rational();
        } while (r == 0);
        return r;
    }

    /// Laurent polynomial with exponents in [min_exp, max_exp] and at least
    /// one nonzero coefficient.
    LaurentSeries laurent_polynomial(int min_exp, int max_exp, std::optional<int> trunc)
    {
        LaurentSeries::Terms terms;
        while (terms.empty()) {
            for (int e = min_exp; e <= max_exp; ++e) {
                if (trunc && e >= *trunc) {
                    break;
                }
                Rational c = uniform(0, 2) == 0 ? Rational(0) : small_rational();
                if (c != 0) {
                    terms.emplace(e, c);
                }
            }
        }
        return LaurentSeries(std::move(terms), trunc);
    }

private:
    std::mt19937_64 rng_;
};

namespace detail {

// Exponent range of sampled values: constants for the trivial target.
inline std::pair<int, int> sample_exponents(const RBTarget &target)
{
    return target.kind == RBTarget::Kind::trivial ? std::pair{0, 0} : std::pair{-2, 2};
}

} // namespace detail

/// Random character: each connected non-group-like generator of degree <=
/// max_degree gets a Laurent polynomial with exponents in [-2, 2] (constants
/// for the trivial target); group-like
/// generators get `grouplike_value` (1 when omitted).
inline Functional random_character(std::shared_ptr<const Family> family, RBTarget target, int max_degree,
                                   std::uint64_t seed, std::optional<int> trunc,
                                   std::optional<Rational> grouplike_value = std::nullopt)
{
    RuleSampler sampler(seed);
    const auto [lo, hi] = detail::sample_exponents(target);
    Functional::Table table;
    for (const auto &g : family->generators(max_degree)) {
        if (family->degree(g) == 0) {
            table.emplace(g, LaurentSeries::constant(grouplike_value.value_or(1)));
        } else {
            table.emplace(g, sampler.laurent_polynomial(lo, hi, trunc));
        }
    }
    return Functional::from_table(std::move(family), std::move(target), Functional::Extension::character,
                                  std::move(table), "phi");
}

/// Random linear rule on every enumerated element of degree <= max_degree,
/// equal to 1 on group-likes.
inline Functional random_linear_rule(std::shared_ptr<const Family> family, RBTarget target, int max_degree,
                                     std::uint64_t seed, std::optional<int> trunc)
{
    RuleSampler sampler(seed);
    const auto [lo, hi] = detail::sample_exponents(target);
    Functional::Table table;
    for (const auto &x : family->enumerate(max_degree)) {
        if (family->degree(x) == 0) {
            table.emplace(x, LaurentSeries::constant(1));
        } else {
            table.emplace(x, sampler.laurent_polynomial(lo, hi, trunc));
        }
    }
    return Functional::from_table(std::move(family), std::move(target), Functional::Extension::explicit_table,
                                  std::move(table), "phi");
}

} // namespace birkhoff
