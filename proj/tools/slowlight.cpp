#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "slowlight/cli/config.hpp"
#include "slowlight/cli/runner.hpp"
#include "slowlight/errors.hpp"

using namespace slowlight;

int main(int argc, char** argv) {
    CLI::App app{"Simulate envelope propagation through a cascade of all-pass delay stages"};
    std::string config_path, scenario, out, dt, emit;
    std::size_t decimate = 0;
    bool check = false;
    auto* cfg_opt = app.add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
    app.add_option("--scenario", scenario, "Preset scenario (fig3, fig4, fig5, fig6a, fig6b)")
        ->excludes(cfg_opt);
    app.add_option("--out", out, "Output directory (default $SLOWLIGHT_OUT_DIR or slowlight-out/<name>)");
    app.add_option("--dt", dt, "Integrator step, e.g. 1ms");
    app.add_option("--emit", emit, "Comma list of waveforms, metrics, spectra, oracle");
    app.add_option("--decimate", decimate, "Write every k-th waveform row")->check(CLI::PositiveNumber);
    app.add_flag("--check", check, "Exit with status 2 when an expectation fails");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? cli::kSuccess : cli::kFailure;
    }

    cli::RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::stringstream text;
            text << in.rdbuf();
            config = cli::parse_config(text.str());
        } else if (!scenario.empty()) {
            config.scenario = scenario;
        } else {
            std::cerr << "one of --config or --scenario is required\n";
            return cli::kFailure;
        }
        if (!out.empty()) config.output_dir = out;
        if (!dt.empty()) {
            config.dt = cli::parse_seconds(dt);
            if (!(config.dt > 0.0)) throw InvalidArgument("--dt must be positive");
        }
        if (!emit.empty()) config.emit = cli::parse_emit(emit);
        if (decimate > 0) config.decimate = decimate;
    } catch (const ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return cli::kFailure;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return cli::kFailure;
    }

    const auto outcome = cli::run(config, check, std::cout);
    for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
    return outcome.exit_code;
}
