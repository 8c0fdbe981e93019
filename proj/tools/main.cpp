#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ricciwave/harness.hpp"
#include "ricciwave/types.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ricciwave: numerical checks for the wave-equation approximation "
                 "of backward heat flow coupled to Ricci flow"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the experiment registry");

    std::string experiment, config_path, out_path, format = "csv";
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "run one experiment");
    run->add_option("experiment", experiment, "experiment name (see `ricciwave list`)")
        ->required();
    run->add_option("--config", config_path, "config file (INI-style sections)");
    run->add_option("--out", out_path, "output path (default: stdout)");
    run->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--set", overrides, "key=value override (repeatable)");
    bool plot = false;
    run->add_flag("--plot", plot,
                  "also write a sibling gnuplot script next to --out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*list) {
            for (const auto& info : ricciwave::experiment_registry()) {
                std::cout << info.name << "  -  " << info.description << "\n";
            }
            return 0;
        }
        const ricciwave::ExperimentConfig cfg =
            ricciwave::load_config(config_path, experiment, overrides);
        const ricciwave::ResultTable table = ricciwave::run_experiment(cfg);
        if (out_path.empty()) {
            if (plot) {
                std::cerr << "config error: --plot requires --out\n";
                return 2;
            }
            ricciwave::emit(table, format, std::cout);
        } else {
            ricciwave::emit_to_file(table, format, out_path);
            if (plot && table.columns.size() >= 2) {
                // generic point plot: every column against the first
                const std::string script_path = out_path + ".gnuplot";
                std::ofstream ps(script_path);
                if (!ps) throw ricciwave::ConfigError("cannot write " + script_path);
                ps << "set datafile separator ','\n"
                   << "set key outside\n"
                   << "set xlabel '" << table.columns[0] << "'\n"
                   << "plot";
                for (std::size_t c = 1; c < table.columns.size(); ++c) {
                    ps << (c > 1 ? ", \\\n    " : " ") << "'" << out_path
                       << "' skip 1 using 1:" << c + 1 << " with points title '"
                       << table.columns[c] << "'";
                }
                ps << "\n";
            }
        }
        // a sweep that had to flag divergent members is a numerical failure
        const auto it = std::find(table.columns.begin(), table.columns.end(), "diverged");
        if (it != table.columns.end()) {
            const std::size_t col = it - table.columns.begin();
            for (const auto& row : table.rows) {
                if (row[col] != 0.0) return 1;
            }
        }
        return 0;
    } catch (const ricciwave::DivergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const ricciwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ricciwave::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
