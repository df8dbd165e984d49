#include "susy/cli.hpp"
#include "susy/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { ok = 0, config_error = 2, convergence_error = 3, admissibility_error = 4 };

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw susy::ConfigurationError("cannot write '" + out + "'");
    f << text;
}

void report(const char* kind, const std::exception& e)
{
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = e.what();
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    using namespace susy;
    CLI::App app{"Propagators of Darboux/Crum partner Hamiltonians"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("susyprop ") + SUSYPROP_VERSION);

    std::string config_path, out, format = "csv", method, suite = "all", table_path, kind = "line", source;
    std::optional<std::uint64_t> seed;
    bool reproducible = false;
    double y0 = 0.0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path, "model configuration (YAML)")->required()->check(CLI::ExistingFile);
        c->add_option("--out", out, "output file (default stdout)");
        c->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--seed", seed, "random seed recorded in the output");
        c->add_flag("--reproducible", reproducible, "omit run-dependent metadata");
    };
    auto* potential = app.add_subcommand("potential", "sample the partner potential V_N(x)");
    add_common(potential);
    auto* propagator = app.add_subcommand("propagator", "evaluate K(x, y, t) on a grid");
    add_common(propagator);
    propagator->add_option("--method", method, "closed | theorem | oracle")
        ->check(CLI::IsMember({"closed", "theorem", "oracle"}));
    auto* green = app.add_subcommand("green", "evaluate the base Green function G(x, y, E)");
    add_common(green);
    auto* verify = app.add_subcommand("verify", "run identity and cross-route checks");
    verify->add_option("suite", suite, "identities | propagators | all");
    verify->add_option("--out", out, "report file (default stdout)");
    verify->add_option("--seed", seed, "random seed");
    verify->add_flag("--reproducible", reproducible, "omit run-dependent metadata");
    auto* plot = app.add_subcommand("plot", "render a table as SVG");
    plot->add_option("--table", table_path, "CSV table produced by potential/propagator/green");
    plot->add_option("--config", config_path, "compute the table from a configuration instead");
    plot->add_option("--source", source, "potential | propagator (with --config)");
    plot->add_option("--kind", kind, "line | heatmap")->check(CLI::IsMember({"line", "heatmap"}));
    plot->add_option("--y0", y0, "y row used by line plots of kernels");
    plot->add_option("--out", out, "SVG file (default stdout)");
    plot->add_flag("--reproducible", reproducible, "omit run-dependent metadata");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : config_error;
    }

    try {
        if (verify->parsed()) {
            const auto rep = cli::cmd_verify(suite, seed.value_or(0));
            emit(rep.to_json(!reproducible), out);
            return rep.all_pass() ? ok : convergence_error;
        }
        if (plot->parsed()) {
            cli::ResultTable t;
            if (!table_path.empty()) {
                std::ifstream in(table_path, std::ios::binary);
                if (!in) throw ConfigurationError("plot: cannot open '" + table_path + "'");
                std::ostringstream ss;
                ss << in.rdbuf();
                t = cli::read_csv(ss.str());
            } else if (!config_path.empty()) {
                const auto cfg = cli::load_config_file(config_path);
                const std::string src = source.empty() ? (kind == "line" ? "potential" : "propagator") : source;
                if (src == "potential")
                    t = cli::cmd_potential(cfg);
                else if (src == "propagator")
                    t = cli::cmd_propagator(cfg);
                else
                    throw ConfigurationError("plot: --source must be potential or propagator");
            } else {
                throw ConfigurationError("plot: give --table or --config");
            }
            const auto r = cli::cmd_plot(t, cli::parse_plot_kind(kind), y0);
            emit(r.svg, out);
            nlohmann::ordered_json j;
            j["kind"] = kind;
            if (kind == "line")
                j["minima"] = r.minima;
            else
                j["cells"] = {r.width_cells, r.height_cells};
            std::cerr << j.dump() << '\n';
            return ok;
        }

        auto cfg = cli::load_config_file(config_path);
        if (seed) cfg.seed = *seed;
        if (!method.empty()) cfg.method = cli::parse_method(method);
        cli::ResultTable t;
        if (potential->parsed())
            t = cli::cmd_potential(cfg);
        else if (propagator->parsed())
            t = cli::cmd_propagator(cfg);
        else
            t = cli::cmd_green(cfg);
        emit(format == "csv" ? cli::to_csv(t) : cli::to_json(t, !reproducible), out);
        if (auto pass = t.get("tolerance_pass"); pass && *pass == "false") return convergence_error;
        return ok;
    } catch (const AdmissibilityError& e) {
        report("admissibility", e);
        return admissibility_error;
    } catch (const ConvergenceError& e) {
        report("convergence", e);
        return convergence_error;
    } catch (const Error& e) {
        report("configuration", e);
        return config_error;
    } catch (const std::exception& e) {
        report("configuration", e);
        return config_error;
    }
}
