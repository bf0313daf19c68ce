#pragma once

#include "awva/trace.hpp"

#include <cstddef>

namespace awva {

/// Behavioral parameters of the multiplier + integrator chain.
/// Composite gain gain_multiplier * gain_integrator defaults to 8358.9.
struct CircuitParams {
    double gain_multiplier = 1.87;    ///< 1/V
    double gain_integrator = 4470.0;  ///< 1/s
    double phase_lag = 75e-6;         ///< s
    double polarity = -1.0;           ///< +1 or -1 (chain inverts by default)

    /// Inputs are clipped to +/- this range before multiplying.
    double multiplier_input_range = 1.0; ///< V
    /// Multiplier and integrator output rails.
    double multiplier_saturation = 2.5;  ///< V
    double integrator_saturation = 10.0; ///< V

    double composite_gain() const { return gain_multiplier * gain_integrator; }
    void validate() const;
};

/// How many samples hit a rail while applying the circuit.
struct SaturationReport {
    std::size_t multiplier_clips = 0;
    std::size_t integrator_clips = 0;
};

/// Multiplier stage: gain_multiplier * x * y with input-range and
/// output-rail clipping. Commutative in (x, y).
double apply_multiplier(double x, double y, const CircuitParams& params);

/// Full chain: per-sample multiplication, cumulative trapezoid
/// integration with integrator gain, polarity flip, and a phase-lag
/// relabel of the output grid (start_time += phase_lag; no resampling).
/// With unit gains, positive polarity and zero lag this reproduces
/// theta_numeric exactly.
ThetaTrace apply_circuit(const SampledTrace& i1, const SampledTrace& i2,
                         const CircuitParams& params, SaturationReport* report = nullptr);

/// Recover the phase lag by curve alignment: scan grid shifts of
/// `ideal` against `observed`, fitting the best scale factor per shift,
/// and return the lag minimizing the L2 misfit. Resolution is one dt.
/// max_lag <= 0 selects a quarter of the ideal trace duration.
double calibrate_phase(const ThetaTrace& observed, const ThetaTrace& ideal,
                       double max_lag = 0.0);

} // namespace awva
