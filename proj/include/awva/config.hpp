#pragma once

#include "awva/circuit_model.hpp"
#include "awva/estimators.hpp"
#include "awva/weak_measurement.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace awva {

/// Declarative experiment description loaded from a JSON config file.
/// All physical quantities carry explicit units in their key names
/// (e.g. delta_t_us, noise_amplitudes_mv); values here are SI.
struct SweepConfig {
    PointerParams pointer;
    CircuitParams circuit;
    double alpha = 0.0;              ///< rad; 0 when not given
    double tau = 0.0;                ///< s
    std::size_t samples_per_period = 5000;
    bool window_centered = true;     ///< center the pulse in the analysis window
    double sigma_fraction = 1.0 / 3.0;
    bool shared_noise = false;
    SwvaOptions swva;
    std::size_t trials = 10000;
    std::uint64_t base_seed = 1;
    unsigned workers = 0;
    double max_failure_fraction = 0.01;

    // simulate
    double simulate_delta_t = 50e-6; ///< s
    double simulate_noise = 0.0;     ///< V

    // sweep-frequency
    std::vector<double> frequencies;      ///< Hz
    std::vector<double> delta_ts;         ///< s, at the pointer's base frequency
    bool scale_delta_t_with_frequency = true;
    double sweep_frequency_noise = 0.0;   ///< V

    // sweep-noise
    double sweep_noise_delta_t = 50e-6;   ///< s
    std::vector<double> noise_amplitudes; ///< V

    double sample_rate() const { return static_cast<double>(samples_per_period) * pointer.frequency; }
    double window_start() const;
    void validate() const;
};

/// Parse a JSON config file. Throws ConfigError on missing/invalid
/// entries and IoError when the file cannot be read.
SweepConfig load_config(const std::string& path);

} // namespace awva
