#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ratmaps/cli.hpp"
#include "ratmaps/strata.hpp"

namespace {

using ratmaps::cli::RunConfig;

// --field accepts "p" or "p^e".
void parse_field(const std::string& text, RunConfig& cfg) {
    const auto caret = text.find('^');
    try {
        if (caret == std::string::npos) {
            cfg.p = static_cast<std::uint32_t>(std::stoul(text));
            cfg.e = 1;
        } else {
            cfg.p = static_cast<std::uint32_t>(std::stoul(text.substr(0, caret)));
            cfg.e = static_cast<std::uint32_t>(std::stoul(text.substr(caret + 1)));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--field", "expected p or p^e, got '" + text + "'");
    }
}

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& field_text, std::string& space,
                std::string& output) {
    cmd->add_option("--space", space, "poly | rat | pconf | m0m-star | m0m | stratum");
    cmd->add_option("--d", cfg.d, "degree d");
    cmd->add_option("--n", cfg.n, "multiplicity bound / target dimension n");
    cmd->add_option("--m", cfg.m, "tuple arity / number of marked points m");
    cmd->add_option("--k", cfg.k, "stratum index k");
    cmd->add_option("--r", cfg.r, "number of configuration points r");
    cmd->add_option("--field", field_text, "finite field, p or p^e");
    cmd->add_option("--exclude", cfg.exclude, "excluded points of A^1 for pconf")
        ->delimiter(',');
    cmd->add_option("--cap", cfg.cap, "enumeration budget in tuples");
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
    cmd->add_option("--output", output, "text | json | csv");
}

int run_report(const std::string& command, const RunConfig& cfg,
               const ratmaps::cli::Report& rep) {
    using ratmaps::cli::OutputFormat;
    switch (cfg.output) {
        case OutputFormat::text: std::cout << ratmaps::cli::render_text(rep); break;
        case OutputFormat::json: std::cout << ratmaps::cli::render_json(rep); break;
        case OutputFormat::csv: std::cout << ratmaps::cli::render_csv(rep, command); break;
    }
    return ratmaps::cli::exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"point counts, Grothendieck-ring classes and cohomology tables for spaces "
                 "of rational maps and marked rational curves, with brute-force "
                 "cross-checks over small finite fields"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string field_text, space_text = "poly", output_text = "text", method_text = "formula";

    CLI::App* count = app.add_subcommand("count", "point counts over a finite field");
    CLI::App* motive = app.add_subcommand("motive", "class in Z[L]");
    CLI::App* tables = app.add_subcommand("tables", "Betti and Frobenius weight tables");
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    for (CLI::App* cmd : {count, motive, tables, verify})
        add_common(cmd, cfg, field_text, space_text, output_text);
    count->add_option("--method", method_text, "formula | brute | both");
    verify->add_option("--check", cfg.check,
                       "recursion | rat-poly | trace | stratification | psi | pconf | all");
    verify->add_option("--max-d", cfg.max_d, "degree bound for the recursion sweep");
    verify->add_option("--max-m", cfg.max_m, "arity bound for the recursion sweep");
    verify->add_option("--max", cfg.max_rat, "parameter bound for the rat-poly sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit cleanly, parse errors are input errors
    }

    try {
        if (auto s = ratmaps::cli::parse_space(space_text))
            cfg.space = *s;
        else
            throw std::invalid_argument("unknown space '" + space_text + "'");
        if (!field_text.empty()) parse_field(field_text, cfg);
        if (output_text == "text")
            cfg.output = ratmaps::cli::OutputFormat::text;
        else if (output_text == "json")
            cfg.output = ratmaps::cli::OutputFormat::json;
        else if (output_text == "csv")
            cfg.output = ratmaps::cli::OutputFormat::csv;
        else
            throw std::invalid_argument("unknown output format '" + output_text + "'");
        if (method_text == "formula")
            cfg.method = ratmaps::cli::Method::formula;
        else if (method_text == "brute")
            cfg.method = ratmaps::cli::Method::brute;
        else if (method_text == "both")
            cfg.method = ratmaps::cli::Method::both;
        else
            throw std::invalid_argument("unknown method '" + method_text + "'");

        if (count->parsed()) return run_report("count", cfg, ratmaps::cli::cmd_count(cfg));
        if (motive->parsed()) return run_report("motive", cfg, ratmaps::cli::cmd_motive(cfg));
        if (tables->parsed()) return run_report("tables", cfg, ratmaps::cli::cmd_tables(cfg));
        if (verify->parsed()) return run_report("verify", cfg, ratmaps::cli::cmd_verify(cfg));
    } catch (const ratmaps::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n"
                  << "required tuples: " << e.required().str() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
