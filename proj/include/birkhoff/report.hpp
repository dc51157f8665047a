#pragma once

// Report builders behind the command-line tool. Kept out of the umbrella
// header because it depends on nlohmann/json.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "birkhoff.hpp"

namespace birkhoff::report {

struct RunConfig {
    std::string family = "bck";
    std::string input;                 // file path, or a built-in poset descriptor
    std::string rules;                 // rule file path; empty means a seeded random rule
    std::optional<std::string> scheme; // "ms" | "trivial"; overrides the rule file header
    std::optional<int> trunc;          // overrides the rule file header
    int max_degree = 4;
    std::string output = "table";
    std::uint64_t seed = 0;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> failures;

    bool ok() const noexcept
    {
        return failures.empty();
    }

    bool operator==(const Report &) const = default;
};

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace detail {

inline int parse_count(const std::string &text, const std::string &desc)
{
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || value < 1) {
        throw Error(ErrorKind::ParseError, "bad size in poset descriptor '" + desc + "'");
    }
    return value;
}

// chain:N, divisors:N, boolean:N or chains:M,N.
inline std::optional<FiniteCategory> builtin_poset(const std::string &desc)
{
    const auto colon = desc.find(':');
    if (colon == std::string::npos) {
        return std::nullopt;
    }
    const std::string kind = desc.substr(0, colon);
    const std::string arg = desc.substr(colon + 1);
    if (kind == "chain") {
        return chain_poset(parse_count(arg, desc));
    }
    if (kind == "divisors") {
        return divisor_poset(parse_count(arg, desc));
    }
    if (kind == "boolean") {
        return boolean_lattice(parse_count(arg, desc));
    }
    if (kind == "chains") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorKind::ParseError, "expected chains:M,N in '" + desc + "'");
        }
        return chain_product(parse_count(arg.substr(0, comma), desc), parse_count(arg.substr(comma + 1), desc));
    }
    return std::nullopt;
}

inline std::string require_input(const RunConfig &cfg)
{
    if (cfg.input.empty()) {
        throw Error(ErrorKind::ParseError, "family " + cfg.family + " needs --input");
    }
    return cfg.input;
}

inline std::string pass(bool ok)
{
    return ok ? "pass" : "FAIL";
}

inline void sort_by_degree(const Family &family, std::vector<BasisKey> &keys)
{
    std::sort(keys.begin(), keys.end(), [&](const BasisKey &a, const BasisKey &b) {
        return std::pair(family.degree(a), a) < std::pair(family.degree(b), b);
    });
}

} // namespace detail

inline std::shared_ptr<const Family> load_family(const RunConfig &cfg)
{
    const std::string &f = cfg.family;
    if (f == "bck") {
        return std::make_shared<BckFamily>();
    }
    if (f == "operadic") {
        return std::make_shared<OperadicFamily>();
    }
    if (f == "nat") {
        return std::make_shared<NatFamily>();
    }
    if (f == "remark-fixture") {
        return std::make_shared<CategoryFamily>(remark_fixture(), f);
    }
    if (f == "poset") {
        const std::string input = detail::require_input(cfg);
        if (auto builtin = detail::builtin_poset(input)) {
            return std::make_shared<CategoryFamily>(std::move(*builtin), f);
        }
        return std::make_shared<CategoryFamily>(load_poset(read_file(input)), f);
    }
    if (f == "monoid") {
        return std::make_shared<CategoryFamily>(load_monoid(read_file(detail::require_input(cfg))), f);
    }
    if (f == "category") {
        return std::make_shared<CategoryFamily>(load_category(read_file(detail::require_input(cfg))), f);
    }
    throw Error(ErrorKind::ParseError, "unknown family '" + f + "'");
}

inline std::vector<std::pair<std::string, std::string>> base_header(const RunConfig &cfg, const std::string &command)
{
    std::vector<std::pair<std::string, std::string>> h{{"command", command}, {"family", cfg.family}};
    if (!cfg.input.empty()) {
        h.emplace_back("input", cfg.input);
    }
    h.emplace_back("max_degree", std::to_string(cfg.max_degree));
    h.emplace_back("seed", std::to_string(cfg.seed));
    return h;
}

/// All coproduct terms of one element with their bidegrees and their place
/// in delta_{0,n} + middle + delta_{n,0}.
inline Report coproduct_report(const RunConfig &cfg, const std::string &literal)
{
    const auto family = load_family(cfg);
    const BasisKey x = family->parse(literal);
    const SplitCoproduct split = split_coproduct(*family, x);
    const int n = split.degree;

    Report r;
    r.command = "coproduct";
    r.header = base_header(cfg, r.command);
    r.header.emplace_back("element", family->display(x));
    r.header.emplace_back("degree", std::to_string(n));
    r.columns = {"coefficient", "left", "right", "deg_left", "deg_right", "part"};

    std::vector<std::tuple<int, BasisKey, int, BasisKey, Rational, std::string>> terms;
    const TensorSum d = delta(*family, x);
    for (const auto &[k, c] : d.terms()) {
        const int p = family->degree(k.first);
        const int q = family->degree(k.second);
        std::string part;
        if (n == 0) {
            part = "group-like";
        } else if (split.left_skew.coefficient(k.first, k.second) != 0) {
            part = "delta_0n";
        } else if (split.right_skew.coefficient(k.first, k.second) != 0) {
            part = "delta_n0";
        } else if (split.middle.coefficient(k.first, k.second) != 0) {
            part = "middle " + std::to_string(p) + "+" + std::to_string(q) + "<=" + std::to_string(n);
        } else {
            part = "stray";
            r.failures.push_back("term " + family->display(k.first) + " (x) " + family->display(k.second)
                                 + " violates the degree splitting");
        }
        terms.emplace_back(p, k.first, q, k.second, c, part);
    }
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a))
            < std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });
    for (const auto &[p, left, q, right, c, part] : terms) {
        r.rows.push_back({to_string(c), family->display(left), family->display(right), std::to_string(p),
                          std::to_string(q), part});
    }
    if (!check_splitting_bound(*family, x)) {
        r.failures.push_back("p + q <= n fails for " + family->display(x));
    }
    return r;
}

/// The Feynman rule a renorm run works with, and the elements it reports on.
struct RuleSetup {
    Functional phi;
    std::vector<BasisKey> elements;
    std::string source;
    std::string mode;
    std::size_t skipped = 0;
};

namespace detail {

// True when a character table reaches x: every generator of x and of every
// coproduct factor below it has a value.
inline bool covered(const Family &family, const Functional::Table &table, const BasisKey &x,
                    std::map<BasisKey, bool> &memo)
{
    if (auto it = memo.find(x); it != memo.end()) {
        return it->second;
    }
    const int n = family.degree(x);
    bool ok = true;
    for (const auto &g : family.factors(x)) {
        ok = ok && (family.degree(g) == 0 || table.count(g) > 0);
    }
    if (ok && n > 0) {
        for (const TensorSum d = family.coproduct(x); const auto &[k, c] : d.terms()) {
            for (const auto &side : {k.first, k.second}) {
                if (ok && family.degree(side) < n) {
                    ok = covered(family, table, side, memo);
                }
            }
        }
    }
    memo[x] = ok;
    return ok;
}

} // namespace detail

inline RuleSetup make_rule(const RunConfig &cfg, const std::shared_ptr<const Family> &family)
{
    RuleFile file;
    if (!cfg.rules.empty()) {
        file = parse_rule_file(read_file(cfg.rules));
    }
    RBTarget::Kind kind = file.target.value_or(RBTarget::Kind::minimal_subtraction);
    if (cfg.scheme) {
        if (*cfg.scheme == "ms") {
            kind = RBTarget::Kind::minimal_subtraction;
        } else if (*cfg.scheme == "trivial") {
            kind = RBTarget::Kind::trivial;
        } else {
            throw Error(ErrorKind::ParseError, "unknown scheme '" + *cfg.scheme + "'");
        }
    }
    const int trunc = cfg.trunc.value_or(file.trunc.value_or(8));
    const RBTarget target =
        kind == RBTarget::Kind::trivial ? RBTarget::trivial() : RBTarget::minimal_subtraction(trunc);

    if (cfg.rules.empty()) {
        if (family->has_product()) {
            return {random_character(family, target, cfg.max_degree, cfg.seed, target.trunc_order),
                    family->enumerate(cfg.max_degree), "random", "character"};
        }
        return {random_linear_rule(family, target, cfg.max_degree, cfg.seed, target.trunc_order),
                family->enumerate(cfg.max_degree), "random", "linear"};
    }
    const RuleMode mode = file.mode.value_or(RuleMode::linear);
    Functional phi = load_rules(family, file, target);
    std::vector<BasisKey> elements;
    std::string mode_name = "character";
    if (mode == RuleMode::linear) {
        // A linear rule is only defined on its listed elements.
        mode_name = "linear";
        for (const auto &[k, v] : *phi.table()) {
            if (family->degree(k) <= cfg.max_degree) {
                elements.push_back(k);
            }
        }
        detail::sort_by_degree(*family, elements);
    } else {
        if (mode == RuleMode::zeta) {
            mode_name = "zeta";
            elements = family->enumerate(cfg.max_degree);
        } else {
            // Report only what the listed generators determine.
            std::map<BasisKey, bool> memo;
            std::size_t skipped = 0;
            for (const auto &x : family->enumerate(cfg.max_degree)) {
                if (detail::covered(*family, *phi.table(), x, memo)) {
                    elements.push_back(x);
                } else {
                    ++skipped;
                }
            }
            return {std::move(phi), std::move(elements), cfg.rules, mode_name, skipped};
        }
    }
    return {std::move(phi), std::move(elements), cfg.rules, mode_name};
}

/// phi, phi~, phi-, phi+, the projection R(phi+) and the Birkhoff residual
/// phi - (phi-)^{-1} * phi+ for every reported element.
inline Report renorm_report(const RunConfig &cfg)
{
    const auto family = load_family(cfg);
    RuleSetup setup = make_rule(cfg, family);
    const RBTarget &target = setup.phi.target();

    Report r;
    r.command = "renorm";
    r.header = base_header(cfg, r.command);
    r.header.emplace_back("scheme", target.kind == RBTarget::Kind::trivial ? "trivial" : "ms");
    r.header.emplace_back("trunc", target.trunc_order ? std::to_string(*target.trunc_order) : "exact");
    r.header.emplace_back("rule", setup.source);
    r.header.emplace_back("mode", setup.mode);
    if (setup.skipped > 0) {
        r.header.emplace_back("skipped", std::to_string(setup.skipped) + " elements without generator values");
    }
    r.columns = {"element", "deg", "phi", "phi~", "phi-", "phi+", "R(phi+)", "residual"};

    const Renormalization run(setup.phi);
    const Functional minus_inverse = convolution_inverse(run.minus);
    for (const auto &x : setup.elements) {
        const int n = family->degree(x);
        const LaurentSeries plus = run.plus(x);
        std::string pole = "-";
        if (n > 0) {
            const LaurentSeries projected = rb_project(plus, target);
            pole = to_string(projected);
            if (!projected.is_zero()) {
                r.failures.push_back("R(phi+(" + family->display(x) + ")) = " + pole);
            }
        }
        const LaurentSeries residual = birkhoff_residual(setup.phi, minus_inverse, run.plus, x);
        if (!residual.is_zero()) {
            r.failures.push_back("Birkhoff residual at " + family->display(x) + " is " + to_string(residual));
        }
        r.rows.push_back({family->display(x), std::to_string(n), to_string(setup.phi(x)), to_string(run.calibrated(x)),
                          to_string(run.minus(x)), to_string(plus), pole, to_string(residual)});
    }
    return r;
}

/// Mobius values through the renormalisation engine next to the direct
/// recursion, with the inversion and renormalised-zeta checks.
inline Report mobius_report(const RunConfig &cfg)
{
    const auto family = load_family(cfg);
    const auto *incidence = dynamic_cast<const IncidenceFamily *>(family.get());
    if (incidence == nullptr) {
        throw Error(ErrorKind::ParseError, "mobius needs an incidence family, not " + cfg.family);
    }
    Report r;
    r.command = "mobius";
    r.header = base_header(cfg, r.command);
    r.columns = {"element", "deg", "mu", "oracle", "agree", "zeta+"};

    const Mobius mu(family);
    const MobiusOracle oracle(*incidence);
    const Functional e = counit_functional(family, RBTarget::trivial());
    for (const auto &x : family->enumerate(cfg.max_degree)) {
        const Rational value = mu(x);
        const Rational expected = oracle(x);
        const LaurentSeries zeta_plus = mu.renormalized_zeta()(x);
        if (value != expected) {
            r.failures.push_back("mu(" + family->display(x) + ") = " + to_string(value) + " but the recursion gives "
                                 + to_string(expected));
        }
        if (!(zeta_plus == e(x))) {
            r.failures.push_back("renormalized zeta at " + family->display(x) + " is " + to_string(zeta_plus));
        }
        r.rows.push_back({family->display(x), std::to_string(family->degree(x)), to_string(value), to_string(expected),
                          value == expected ? "yes" : "no", to_string(zeta_plus)});
    }
    if (!inversion_check(family, cfg.max_degree)) {
        r.failures.push_back("mu * zeta = e = zeta * mu fails");
    }
    return r;
}

/// Pass/fail matrix of the structural checks per element. "-" marks a check
/// that does not apply to the family.
inline Report axioms_report(const RunConfig &cfg)
{
    const auto family = load_family(cfg);
    Report r;
    r.command = "axioms";
    r.header = base_header(cfg, r.command);
    r.columns = {"element", "deg", "coalgebra", "splitting", "in_out_terms", "in_out_maps", "bialgebra", "collapse", "core"};

    const auto elements = family->enumerate(cfg.max_degree);
    const auto *operadic = dynamic_cast<const OperadicFamily *>(family.get());
    const BckFamily bck;
    for (const auto &x : elements) {
        const int n = family->degree(x);
        std::vector<BasisKey> partners;
        if (family->has_product()) {
            for (const auto &y : elements) {
                if (n + family->degree(y) <= cfg.max_degree) {
                    partners.push_back(y);
                }
            }
        }
        std::vector<std::pair<std::string, std::string>> cells; // (check, cell)
        auto record = [&](const std::string &check, bool ok) {
            cells.emplace_back(check, detail::pass(ok));
            if (!ok) {
                r.failures.push_back(check + " fails at " + family->display(x));
            }
        };
        record("coalgebra", check_coalgebra_axioms(*family, x));
        record("splitting", check_splitting_bound(*family, x) && split_coproduct(*family, x).stray.size() == 0);
        if (family->has_in_out()) {
            record("in_out_terms", check_in_out_terms(*family, x));
            record("in_out_maps", check_in_out_maps(*family, x, partners));
        } else {
            cells.emplace_back("in_out_terms", "-");
            cells.emplace_back("in_out_maps", "-");
        }
        if (family->has_product()) {
            bool ok = true;
            for (const auto &y : partners) {
                ok = ok && check_bialgebra_compat(*family, x, y);
            }
            record("bialgebra", ok);
            record("collapse", check_collapse_coalgebra_map(*family, x));
        } else {
            cells.emplace_back("bialgebra", "-");
            cells.emplace_back("collapse", "-");
        }
        if (operadic != nullptr) {
            record("core", check_core_homomorphism(*operadic, bck, x));
        } else {
            cells.emplace_back("core", "-");
        }
        std::vector<std::string> row{family->display(x), std::to_string(n)};
        for (const auto &[check, cell] : cells) {
            row.push_back(cell);
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

inline void render_table(const Report &r, std::ostream &out)
{
    for (const auto &[k, v] : r.header) {
        out << "# " << k << ": " << v << '\n';
    }
    std::vector<std::size_t> width(r.columns.size());
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        width[i] = r.columns[i].size();
        for (const auto &row : r.rows) {
            width[i] = std::max(width[i], row[i].size());
        }
    }
    auto line = [&](const std::vector<std::string> &cells) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                text += "  ";
            }
            text += cells[i];
            if (i + 1 < cells.size()) {
                text.append(width[i] - cells[i].size(), ' ');
            }
        }
        out << text << '\n';
    };
    line(r.columns);
    std::vector<std::string> rule;
    for (const auto w : width) {
        rule.emplace_back(w, '-');
    }
    line(rule);
    for (const auto &row : r.rows) {
        line(row);
    }
    for (const auto &f : r.failures) {
        out << "FAIL: " << f << '\n';
    }
    out << "# status: " << (r.ok() ? "pass" : "fail") << '\n';
}

inline void render_jsonl(const Report &r, std::ostream &out)
{
    using nlohmann::ordered_json;
    ordered_json header{{"record", "header"}};
    for (const auto &[k, v] : r.header) {
        header[k] = v;
    }
    header["columns"] = r.columns;
    out << header.dump() << '\n';
    for (const auto &row : r.rows) {
        ordered_json j{{"record", "row"}};
        for (std::size_t i = 0; i < r.columns.size(); ++i) {
            j[r.columns[i]] = row[i];
        }
        out << j.dump() << '\n';
    }
    ordered_json summary{{"record", "summary"}, {"ok", r.ok()}, {"failures", r.failures}};
    out << summary.dump() << '\n';
}

inline void render(const Report &r, const std::string &format, std::ostream &out)
{
    if (format == "jsonl") {
        render_jsonl(r, out);
    } else {
        render_table(r, out);
    }
}

/// Inverse of render_jsonl.
inline Report parse_jsonl(std::string_view text)
{
    using nlohmann::ordered_json;
    Report r;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const ordered_json j = ordered_json::parse(line);
        const std::string kind = j.at("record").get<std::string>();
        if (kind == "header") {
            for (const auto &[k, v] : j.items()) {
                if (k == "record") {
                    continue;
                }
                if (k == "columns") {
                    r.columns = v.get<std::vector<std::string>>();
                } else {
                    r.header.emplace_back(k, v.get<std::string>());
                    if (k == "command") {
                        r.command = v.get<std::string>();
                    }
                }
            }
        } else if (kind == "row") {
            std::vector<std::string> row;
            for (const auto &c : r.columns) {
                row.push_back(j.at(c).get<std::string>());
            }
            r.rows.push_back(std::move(row));
        } else if (kind == "summary") {
            r.failures = j.at("failures").get<std::vector<std::string>>();
        } else {
            throw Error(ErrorKind::ParseError, "unknown record '" + kind + "'");
        }
    }
    return r;
}

} // namespace birkhoff::report
