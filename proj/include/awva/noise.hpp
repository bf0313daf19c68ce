#pragma once

#include "awva/circuit_model.hpp"
#include "awva/trace.hpp"

#include <cstdint>

namespace awva {

/// Seeded Gaussian white noise: i.i.d. samples with
/// sigma = sigma_fraction * amplitude, hard-clipped to [-amplitude,
/// +amplitude] so the peak never exceeds the configured bound.
struct NoiseSpec {
    double amplitude = 0.0;            ///< N_A, V (peak bound)
    std::uint64_t seed = 0;
    double sigma_fraction = 1.0 / 3.0; ///< in (0, 1]

    void validate() const;
};

/// Noise realization on the grid of `grid` (its sample values are
/// ignored). Deterministic for a fixed (seed, grid length); distinct
/// channels need distinct seeds.
SampledTrace gen_noise(const SampledTrace& grid, const NoiseSpec& spec);

/// 20*log10(signal_peak / noise_peak). Zero noise peak maps to +inf
/// ("noise-free"), zero signal to -inf; both zero is NaN.
double snr_db(double signal_peak, double noise_peak);

/// Circuit response to both channels with independent noise injected:
/// apply_circuit(i1 + N(spec1), i2 + N(spec2)). Identical seeds are a
/// configuration error (they would fully correlate the channels); use
/// theta_with_shared_noise to model a single shared source explicitly.
ThetaTrace theta_with_noise(const SampledTrace& i1, const SampledTrace& i2,
                            const NoiseSpec& spec1, const NoiseSpec& spec2,
                            const CircuitParams& circuit, SaturationReport* report = nullptr);

/// Fully-correlated variant: one realization added to both channels.
ThetaTrace theta_with_shared_noise(const SampledTrace& i1, const SampledTrace& i2,
                                   const NoiseSpec& spec, const CircuitParams& circuit,
                                   SaturationReport* report = nullptr);

} // namespace awva
