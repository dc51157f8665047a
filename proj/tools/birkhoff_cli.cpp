// Command-line front end: coproducts, renormalisation tables, Mobius tables
// and axiom checks. Exit status 0 when every check passes, 1 when a check
// fails and 2 on errors.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <birkhoff/report.hpp>

namespace {

using birkhoff::report::Report;
using birkhoff::report::RunConfig;

void add_common_options(CLI::App &cmd, RunConfig &cfg, std::string &scheme, int &trunc)
{
    cmd.add_option("--family", cfg.family, "Family to load")
        ->check(CLI::IsMember({"bck", "operadic", "poset", "monoid", "category", "nat", "remark-fixture"}));
    cmd.add_option("--input", cfg.input,
                   "Family input file; posets also accept chain:N, divisors:N, boolean:N, chains:M,N");
    cmd.add_option("--rules", cfg.rules, "Rule file (renorm); omitted means a seeded random rule");
    cmd.add_option("--scheme", scheme, "Rota-Baxter target: ms or trivial")->check(CLI::IsMember({"ms", "trivial"}));
    cmd.add_option("--trunc", trunc, "Series truncation order (default 8)");
    cmd.add_option("--max-degree", cfg.max_degree, "Largest degree reported")->check(CLI::NonNegativeNumber);
    cmd.add_option("--output", cfg.output, "Report format")->check(CLI::IsMember({"table", "jsonl"}));
    cmd.add_option("--seed", cfg.seed, "Seed for random rules");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Renormalisation and Mobius inversion on combinatorial bialgebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string scheme;
    int trunc = 8;
    std::string element;

    auto *coproduct = app.add_subcommand("coproduct", "Coproduct of one element with its degree splitting");
    coproduct->add_option("element", element, "Element literal")->required();
    auto *renorm = app.add_subcommand("renorm", "phi, phi~, phi-, phi+ and the Birkhoff check per element");
    auto *mobius = app.add_subcommand("mobius", "Mobius function against the direct recursion");
    auto *axioms = app.add_subcommand("axioms", "Structural checks per element");
    for (auto *cmd : {coproduct, renorm, mobius, axioms}) {
        add_common_options(*cmd, cfg, scheme, trunc);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App *active = app.get_subcommands().front();
    if (active->count("--scheme") > 0) {
        cfg.scheme = scheme;
    }
    if (active->count("--trunc") > 0) {
        cfg.trunc = trunc;
    }

    try {
        Report r;
        if (active == coproduct) {
            r = birkhoff::report::coproduct_report(cfg, element);
        } else if (active == renorm) {
            r = birkhoff::report::renorm_report(cfg);
        } else if (active == mobius) {
            r = birkhoff::report::mobius_report(cfg);
        } else {
            r = birkhoff::report::axioms_report(cfg);
        }
        birkhoff::report::render(r, cfg.output, std::cout);
        return r.ok() ? 0 : 1;
    } catch (const birkhoff::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
