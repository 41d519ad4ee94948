// lgs_lab: experiment driver.
//
//   lgs_lab semiconv   [--config cfg.json] [--out file] [--format csv|json] [--quiet]
//   lgs_lab coeff-flow | region-map | decay | sum | check   (same flags)
//
// Without --config each experiment runs with its defaults; semiconv scans
// truncation orders 1..60 for N=2.5, L=0, beta=gamma=1, k=0 on the radial
// grid r = 0.05 j, j = 1..200.
//
// Exit codes: 0 success, 1 failed check, 2 configuration error, 3 numeric
// domain error.

#include <iostream>

#include "CLI11.hpp"
#include "lgs/errors.hpp"
#include "lgs/lab.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Laguerre-series rearrangement experiments"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    bool quiet = false;
    const char* names[][2] = {
        {"semiconv", "error of rearranged truncated Slater-function expansions vs truncation order"},
        {"coeff-flow", "rearranged power-series coefficients gamma_nu^(M) vs M"},
        {"region-map", "convergence verdicts of two-range expansions on a (ratio, theta) grid"},
        {"decay", "decay classification of Laguerre coefficient streams"},
        {"sum", "sequence-transform a term or partial-sum file, or an inner mu series"},
        {"check", "built-in identity suite"},
    };
    for (auto& n : names) {
        CLI::App* sub = app.add_subcommand(n[0], n[1]);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--quiet", quiet, "suppress the summary on stderr");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string experiment = app.get_subcommands().front()->get_name();

    using namespace lgs::lab;
    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!cfg.experiment.empty() && cfg.experiment != experiment)
            throw ConfigError("config is for experiment '" + cfg.experiment + "'");
        cfg.experiment = experiment;
        if (!out_path.empty()) cfg.out = out_path;
        if (!format.empty()) cfg.format = format == "json" ? Format::json : Format::csv;

        const Table t = run(cfg);
        write_table(t, cfg);
        if (!quiet) std::cerr << experiment << ": " << t.summary.dump() << "\n";
        if (experiment == "check" && t.summary.value("failed", 0) > 0) return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const lgs::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
