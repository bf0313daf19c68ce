#pragma once

#include "awva/circuit_model.hpp"
#include "awva/trace.hpp"
#include "awva/weak_measurement.hpp"

#include <cstdint>
#include <optional>

namespace awva {

/// Scope-style amplitude reading of a Theta trace: the signed extremum
/// of largest magnitude over the analysis window.
struct AmplitudeReading {
    double max_value = 0.0; ///< signed extremum, V (or V^2*s pre-circuit)
    double max_time = 0.0;  ///< s
    std::size_t trials = 1;
    double std_dev = 0.0;
};

AmplitudeReading read_amplitude(const ThetaTrace& theta);

/// Sensitivity K = (Max[Theta_ref] - Max[Theta_shifted]) / delta_t,
/// converted to mV/us (inputs in volts, delta_t in seconds). Positive
/// when the shift attenuates the peak.
double sensitivity_k(double max_theta_ref, double max_theta_shifted, double delta_t);

/// Normalized sensitivity K / K_ref (K_ref from the noise-free run).
double normalize_awva(double k, double k_ref);

/// Normalized pointer readout delta_t_scope / delta_t_true; negative
/// values signal estimator breakdown.
double normalize_swva(double delta_t_scope, double delta_t_true);

enum class SwvaMethod {
    threshold_centroid, ///< argmax + centroid of the 50%-of-amplitude region
    matched_filter      ///< cross-correlation with the clean template
};

/// Pointer-readout options. Negative values select the documented
/// defaults (smoother window width/10, centroid half-window 0.75*width,
/// threshold drop amplitude/2).
struct SwvaOptions {
    SwvaMethod method = SwvaMethod::threshold_centroid;
    double smoother_window = -1.0;      ///< s; 0 disables pre-smoothing
    double centroid_half_window = -1.0; ///< s
    double threshold_drop = -1.0;       ///< V
};

/// Estimate the displacement of a (noisy) pointer trace relative to the
/// unshifted template center. Returns nullopt when no peak is
/// identifiable (flat trace).
std::optional<double> swva_delay_estimate(const SampledTrace& noisy_i1,
                                          const PointerParams& tmpl,
                                          const SwvaOptions& options = {});

/// Mean/std of a normalized sensitivity over Monte Carlo trials.
struct SensitivityStats {
    double mean = 0.0;
    double std_dev = 0.0; ///< population standard deviation
    std::size_t trials = 0;
    std::size_t failures = 0;
    double noise_amplitude = 0.0; ///< V
    double snr = 0.0;             ///< dB, from the clean pointer peak and N_A
};

struct TrialResults {
    SensitivityStats awva; ///< K^A statistics
    SensitivityStats swva; ///< K^W statistics
};

/// One Monte Carlo experiment: per-trial independent noise on both
/// channels of both the shifted and reference runs, amplitude readings
/// through the circuit model, and the normalized K^A / K^W statistics.
struct TrialConfig {
    PointerParams pointer;
    CircuitParams circuit;
    double delta_t = 50e-6;       ///< s, true shift
    double sample_rate = 1e6;     ///< Hz
    double noise_amplitude = 0.0; ///< V
    double sigma_fraction = 1.0 / 3.0;
    std::uint64_t base_seed = 0;
    SwvaOptions swva;
    bool shared_noise = false; ///< one noise source per run instead of two
    unsigned workers = 0;      ///< 0 selects hardware concurrency
};

/// Runs `trials` independent trials. Trial seeds derive from
/// (base_seed, trial index) through the counter-based generator, so
/// results are identical for any worker count.
TrialResults run_trials(const TrialConfig& config, std::size_t trials);

} // namespace awva
