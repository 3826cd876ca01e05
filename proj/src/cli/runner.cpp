#include "slowlight/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "slowlight/chain/chain.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/numeric/fft.hpp"
#include "slowlight/oracle/spectral.hpp"

namespace slowlight::cli {

namespace {

using nlohmann::json;

void put(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

json optional_value(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json metrics_json(const Scenario& scenario, const ScenarioResult& result) {
    const auto& m = result.metrics;
    json j;
    j["scenario"] = scenario.name;
    j["stages"] = result.record.stage_count();
    j["dt_s"] = result.record.dt();
    j["velocity_stages_per_s"] = optional_value(m.velocity);

    json peak = json::array(), width = json::array();
    for (const auto& v : m.peak_time) peak.push_back(optional_value(v));
    for (const auto& v : m.temporal_width) width.push_back(optional_value(v));
    j["peak_time_s"] = peak;
    j["temporal_width_s"] = width;

    json slices = json::array();
    for (const auto& s : m.spatial_length) {
        if (s.length) slices.push_back({{"time_s", s.time}, {"length_stages", *s.length}});
    }
    j["spatial_length"] = slices;
    j["spectral_width_rad_per_s"] = optional_value(m.spectral_width);
    j["distortion_nrmse"] = m.distortion;
    j["spectrum_ratio"] = optional_value(m.spectrum_ratio);

    // delta_omega / nu_d for the tabulated switch settings and for every
    // velocity the schedule uses.
    json table = json::array();
    if (m.spectral_width) {
        auto row = [&](json label, double nu) {
            const auto c = spectrum_condition(*m.spectral_width, nu);
            table.push_back({{"setting", std::move(label)},
                             {"velocity_stages_per_s", nu},
                             {"ratio", c.ratio},
                             {"verdict", std::string(to_string(c.verdict))}});
        };
        for (const auto& s : kSwitchTable) {
            row(json{{"sw1", std::string(s.sw1)}, {"sw2", std::string(s.sw2)}}, s.velocity);
        }
        for (double T : scenario.schedule.distinct_delays()) row("schedule", 1.0 / T);
    }
    j["spectrum_condition"] = table;

    json checks = json::array();
    for (const auto& c : result.checks) {
        checks.push_back({{"name", c.name},
                          {"measured", std::isfinite(c.measured) ? json(c.measured) : json(nullptr)},
                          {"relation", c.relation},
                          {"target", c.target},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    }
    j["checks"] = checks;
    return j;
}

json oracle_json(const Scenario& scenario, const ScenarioResult& result) {
    json j;
    j["characteristic_nrmse"] = result.metrics.distortion;
    if (scenario.schedule.time_invariant()) {
        const auto& rec = result.record;
        const auto& input = rec.signal(0);
        double peak = 0.0;
        for (double v : input.samples) peak = std::max(peak, std::abs(v));
        const auto oracle = spectral_propagate(input, scenario.schedule, StageResponse::bilinear);
        const auto& out = rec.signal(rec.stage_count());
        double err = 0.0;
        for (std::size_t k = 0; k < out.samples.size(); ++k) {
            err = std::max(err, std::abs(out.samples[k] - oracle.samples[k]));
        }
        j["spectral_max_relative_error"] = peak > 0.0 ? err / peak : 0.0;
    } else {
        j["spectral_max_relative_error"] = nullptr;
    }
    return j;
}

std::filesystem::path default_output_dir(const RunConfig& config, const Scenario& scenario) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return std::filesystem::path("slowlight-out") / scenario.name;
}

std::ofstream open(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    return os;
}

}  // namespace

void write_waveforms(std::ostream& os, const ChainRecord& record, std::size_t decimate) {
    if (decimate == 0) throw InvalidArgument("decimation must be at least 1");
    os << "t";
    for (std::size_t n = 0; n <= record.stage_count(); ++n) os << ",v" << n;
    os << '\n';
    for (std::size_t k = 0; k < record.sample_count(); k += decimate) {
        put(os, record.time(k));
        for (const auto& s : record.signals()) {
            os << ',';
            put(os, s.samples[k]);
        }
        os << '\n';
    }
}

void write_spectra(std::ostream& os, const ChainRecord& record, double omega_max) {
    const std::size_t m = numeric::next_power_of_two(record.sample_count());
    std::vector<std::vector<numeric::Complex>> spectra;
    for (const auto& s : record.signals()) spectra.push_back(numeric::fft(numeric::to_complex(s.samples, m)));
    os << "omega";
    for (std::size_t n = 0; n <= record.stage_count(); ++n) os << ",V" << n;
    os << '\n';
    for (std::size_t k = 0; k <= m / 2; ++k) {
        const double w = numeric::bin_frequency(k, m, record.dt());
        if (w > omega_max) break;
        put(os, w);
        for (const auto& spec : spectra) {
            os << ',';
            put(os, std::abs(spec[k]) * record.dt());
        }
        os << '\n';
    }
}

RunOutcome run(const RunConfig& config, bool enforce, std::ostream& log) {
    RunOutcome outcome;
    try {
        const Scenario scenario = resolve(config);
        IntegratorConfig integrator;
        integrator.dt = config.dt;
        const auto result = run_scenario(scenario, integrator);
        outcome.checks = result.checks;
        outcome.output_dir = default_output_dir(config, scenario);
        std::filesystem::create_directories(outcome.output_dir);

        if (config.emit.waveforms) {
            const auto path = outcome.output_dir / "waveforms.csv";
            auto os = open(path);
            write_waveforms(os, result.record, config.decimate);
            outcome.files.push_back(path);
        }
        if (config.emit.metrics) {
            const auto path = outcome.output_dir / "metrics.json";
            auto os = open(path);
            os << metrics_json(scenario, result).dump(2) << '\n';
            outcome.files.push_back(path);
        }
        if (config.emit.spectra) {
            const auto path = outcome.output_dir / "spectra.csv";
            auto os = open(path);
            const double w = result.metrics.spectral_width.value_or(4.0 / scenario.pulse.width());
            write_spectra(os, result.record, 8.0 * w);
            outcome.files.push_back(path);
        }
        if (config.emit.oracle) {
            const auto path = outcome.output_dir / "oracle.json";
            auto os = open(path);
            os << oracle_json(scenario, result).dump(2) << '\n';
            outcome.files.push_back(path);
        }

        for (const auto& c : result.checks) {
            log << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured ";
            put(log, c.measured);
            log << ' ' << c.relation << ' ';
            put(log, c.target);
            if (c.relation == "within") log << " (" << c.tolerance * 100.0 << "%)";
            log << '\n';
        }
        if (enforce && !result.passed()) outcome.exit_code = kCheckFailed;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        outcome.exit_code = kFailure;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        outcome.exit_code = kFailure;
    }
    return outcome;
}

}  // namespace slowlight::cli
