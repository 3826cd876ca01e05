#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "slowlight/cli/config.hpp"
#include "slowlight/metrics/metrics.hpp"
#include "slowlight/scenarios/scenarios.hpp"

namespace slowlight::cli {

inline constexpr const char* kOutputDirEnv = "SLOWLIGHT_OUT_DIR";

enum ExitCode : int { kSuccess = 0, kFailure = 1, kCheckFailed = 2 };

struct RunOutcome {
    int exit_code = kSuccess;
    std::filesystem::path output_dir;
    std::vector<std::filesystem::path> files;
    std::vector<Check> checks;
};

/// Executes the configured run and writes the requested artifacts. With
/// `enforce` set, failed expectations give kCheckFailed. Errors are reported on
/// `log` and give kFailure.
RunOutcome run(const RunConfig& config, bool enforce, std::ostream& log);

/// CSV: time column then v_0..v_N, 9 significant digits, every `decimate`-th row.
void write_waveforms(std::ostream& os, const ChainRecord& record, std::size_t decimate);

/// CSV: angular frequency then |V_n(w)| for every stage, for 0 <= w <= w_max.
void write_spectra(std::ostream& os, const ChainRecord& record, double omega_max);

}  // namespace slowlight::cli
