#include "awva/noise.hpp"

#include "awva/errors.hpp"
#include "awva/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace awva {

void NoiseSpec::validate() const {
    if (!(amplitude >= 0.0))
        throw ConfigError("noise amplitude must be non-negative");
    if (!(sigma_fraction > 0.0) || !(sigma_fraction <= 1.0))
        throw ConfigError("sigma_fraction must lie in (0, 1]");
}

SampledTrace gen_noise(const SampledTrace& grid, const NoiseSpec& spec) {
    grid.validate();
    spec.validate();
    SampledTrace out;
    out.start_time = grid.start_time;
    out.dt = grid.dt;
    out.samples.assign(grid.size(), 0.0);
    if (spec.amplitude == 0.0)
        return out;
    GaussianStream g(Philox4x32(spec.seed));
    const double sigma = spec.sigma_fraction * spec.amplitude;
    const double bound = spec.amplitude;
    for (double& v : out.samples)
        v = std::clamp(sigma * g.next(), -bound, bound);
    return out;
}

double snr_db(double signal_peak, double noise_peak) {
    if (signal_peak < 0.0 || noise_peak < 0.0)
        throw std::domain_error("snr_db expects non-negative peak magnitudes");
    if (noise_peak == 0.0 && signal_peak == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    if (noise_peak == 0.0)
        return std::numeric_limits<double>::infinity();
    if (signal_peak == 0.0)
        return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(signal_peak / noise_peak);
}

ThetaTrace theta_with_noise(const SampledTrace& i1, const SampledTrace& i2,
                            const NoiseSpec& spec1, const NoiseSpec& spec2,
                            const CircuitParams& circuit, SaturationReport* report) {
    require_same_grid(i1, i2);
    if (spec1.seed == spec2.seed)
        throw ConfigError("channel noise seeds must differ (shared noise is a separate mode)");
    return apply_circuit(add(i1, gen_noise(i1, spec1)), add(i2, gen_noise(i2, spec2)),
                         circuit, report);
}

ThetaTrace theta_with_shared_noise(const SampledTrace& i1, const SampledTrace& i2,
                                   const NoiseSpec& spec, const CircuitParams& circuit,
                                   SaturationReport* report) {
    require_same_grid(i1, i2);
    SampledTrace n = gen_noise(i1, spec);
    return apply_circuit(add(i1, n), add(i2, n), circuit, report);
}

} // namespace awva
