#pragma once

#include "awva/config.hpp"
#include "awva/trace.hpp"

#include <string>
#include <utility>

namespace awva {

/// Exit codes shared by the CLI and the command implementations.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kIoError = 3,
    kEstimationFailure = 4
};

/// Single-shot trace dump: clean channels, noisy channels, ideal Theta
/// and the circuit-observed Theta on a shared time column
/// (<out_dir>/waveforms.csv).
int cmd_simulate(const SweepConfig& config, const std::string& out_dir);

/// Frequency/shift sweep (<out_dir>/frequency_sweep.csv): one row per
/// (f, delta_t) pair with amplitude readings, attenuation ratios and
/// sensitivity K.
int cmd_sweep_frequency(const SweepConfig& config, const std::string& out_dir);

/// Noise sweep (<out_dir>/noise_sweep.csv): one row per noise amplitude
/// with SNR and normalized K^W / K^A statistics over `trials` trials.
int cmd_sweep_noise(const SweepConfig& config, const std::string& out_dir);

/// Phase-lag calibration round trip (<out_dir>/calibration.csv). When
/// observed_csv is empty the observed trace is synthesized from the
/// config; otherwise it is read as a time + value CSV.
int cmd_calibrate_phase(const SweepConfig& config, const std::string& out_dir,
                        const std::string& observed_csv);

/// Run an external two-channel scope export through the correlator and
/// circuit chain (<out_dir>/ingest_theta.csv).
int cmd_ingest(const SweepConfig& config, const std::string& in_csv,
               const std::string& out_dir);

/// Parse a scope CSV: header with a time_s column plus two value
/// columns, uniform time step within 0.1%. Non-uniform grids are
/// rejected, never resampled.
std::pair<SampledTrace, SampledTrace> ingest_scope_csv(const std::string& path);

} // namespace awva
