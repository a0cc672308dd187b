#include <iostream>

#include "CLI11.hpp"

#include "khx/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"khx: Lee-deformed Khovanov homology over F_p[x], torsion orders, and "
                 "cobordism-movie verification"};
    app.require_subcommand(1);

    khx::RunConfig cfg;
    app.add_option("--prime", cfg.prime, "odd prime field characteristic (default 32003)");
    app.add_option("--basepoint", cfg.basepoint, "override the marked arc");
    app.add_option("--format", cfg.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timings", cfg.timings, "include wall-clock timing in the report");
    app.add_option("-v,--verbose", cfg.verbosity, "verbosity level");

    std::string homology_file, movie_file, batch_file, checks_csv;

    CLI::App* homology = app.add_subcommand("homology", "bigraded homology and torsion order");
    homology->add_option("input", homology_file, "diagram file (JSON or PD text)")->required();

    CLI::App* movie = app.add_subcommand("movie", "validate a movie and run its checks");
    movie->add_option("input", movie_file, "movie JSON file")->required();
    movie->add_option("--checks", checks_csv,
                      "comma-separated subset of mirror-identity,neck,reverse-saddles,ribbon,"
                      "bounds");

    CLI::App* batch = app.add_subcommand("batch", "process a table of named PD codes");
    batch->add_option("input", batch_file, "table JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (!checks_csv.empty()) {
        std::string cur;
        for (char ch : checks_csv + ",") {
            if (ch == ',') {
                if (!cur.empty()) cfg.checks.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
    }

    khx::CmdResult result;
    try {
        if (homology->parsed()) result = khx::cmd_homology(homology_file, cfg);
        if (movie->parsed()) result = khx::cmd_movie(movie_file, cfg);
        if (batch->parsed()) result = khx::cmd_batch(batch_file, cfg);
    } catch (const khx::Error& e) {
        std::cerr << "error (" << khx::err_name(e.kind) << "): " << e.what() << "\n";
        return khx::exit_code_for(e.kind);
    }

    if (cfg.format == "json")
        std::cout << result.report.dump(2) << "\n";
    else
        std::cout << result.text;
    return result.exit_code;
}
