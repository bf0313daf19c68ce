#include "awva/circuit_model.hpp"

#include "awva/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace awva {

void CircuitParams::validate() const {
    if (!(gain_multiplier > 0.0))
        throw ConfigError("multiplier gain must be positive");
    if (!(gain_integrator > 0.0))
        throw ConfigError("integrator gain must be positive");
    if (!(phase_lag >= 0.0))
        throw ConfigError("phase lag must be non-negative");
    if (polarity != 1.0 && polarity != -1.0)
        throw ConfigError("polarity must be +1 or -1");
    if (!(multiplier_input_range > 0.0) || !(multiplier_saturation > 0.0) ||
        !(integrator_saturation > 0.0))
        throw ConfigError("saturation bounds must be positive");
}

namespace {

inline double clip(double v, double bound, bool& clipped) {
    if (v > bound) { clipped = true; return bound; }
    if (v < -bound) { clipped = true; return -bound; }
    return v;
}

} // namespace

double apply_multiplier(double x, double y, const CircuitParams& params) {
    bool c = false;
    double xin = clip(x, params.multiplier_input_range, c);
    double yin = clip(y, params.multiplier_input_range, c);
    return clip(params.gain_multiplier * xin * yin, params.multiplier_saturation, c);
}

ThetaTrace apply_circuit(const SampledTrace& i1, const SampledTrace& i2,
                         const CircuitParams& params, SaturationReport* report) {
    i1.validate();
    require_same_grid(i1, i2);
    params.validate();

    ThetaTrace out;
    out.start_time = i1.start_time + params.phase_lag;
    out.dt = i1.dt;
    out.values.resize(i1.size());

    SaturationReport local;
    auto stage = [&](std::size_t i) {
        bool c = false;
        double xin = clip(i1.samples[i], params.multiplier_input_range, c);
        double yin = clip(i2.samples[i], params.multiplier_input_range, c);
        double m = clip(params.gain_multiplier * xin * yin, params.multiplier_saturation, c);
        if (c) ++local.multiplier_clips;
        return m;
    };

    CompensatedSum acc;
    double prev = stage(0);
    out.values[0] = 0.0;
    for (std::size_t i = 1; i < i1.size(); ++i) {
        double m = stage(i);
        acc.add(0.5 * i1.dt * (prev + m));
        prev = m;
        bool c = false;
        double v = clip(params.gain_integrator * acc.value(), params.integrator_saturation, c);
        if (c) ++local.integrator_clips;
        out.values[i] = params.polarity * v;
    }
    if (report)
        *report = local;
    return out;
}

double calibrate_phase(const ThetaTrace& observed, const ThetaTrace& ideal, double max_lag) {
    if (observed.values.size() < 2 || ideal.values.size() < 2)
        throw CalibrationError("traces too short for curve alignment");
    if (observed.dt != ideal.dt)
        throw GridMismatchError("calibrate_phase requires equal sample spacing");
    const double dt = ideal.dt;
    if (max_lag <= 0.0)
        max_lag = 0.25 * static_cast<double>(ideal.values.size()) * dt;

    auto flat = [](const ThetaTrace& t) {
        auto [mn, mx] = std::minmax_element(t.values.begin(), t.values.end());
        return *mn == *mx;
    };
    if (flat(ideal) || flat(observed))
        throw CalibrationError("flat trace: no unique alignment");

    const auto n_obs = static_cast<std::ptrdiff_t>(observed.values.size());
    const auto n_id = static_cast<std::ptrdiff_t>(ideal.values.size());
    const double base = observed.start_time - ideal.start_time;
    const auto max_m = static_cast<std::ptrdiff_t>(std::floor(max_lag / dt));

    double best_misfit = std::numeric_limits<double>::infinity();
    double best_lag = base;
    // candidate lag base + m*dt aligns observed[i] with ideal[i - m]
    for (std::ptrdiff_t m = -max_m; m <= max_m; ++m) {
        std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, m);
        std::ptrdiff_t hi = std::min(n_obs, n_id + m);
        if (hi - lo < 2)
            continue;
        double dot = 0.0, norm = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            double idv = ideal.values[static_cast<std::size_t>(i - m)];
            dot += observed.values[static_cast<std::size_t>(i)] * idv;
            norm += idv * idv;
        }
        if (norm == 0.0)
            continue;
        double scale = dot / norm;
        double misfit = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            double r = observed.values[static_cast<std::size_t>(i)] -
                       scale * ideal.values[static_cast<std::size_t>(i - m)];
            misfit += r * r;
        }
        misfit /= static_cast<double>(hi - lo);
        if (misfit < best_misfit) {
            best_misfit = misfit;
            best_lag = base + static_cast<double>(m) * dt;
        }
    }
    if (!std::isfinite(best_misfit))
        throw CalibrationError("no overlapping alignment window within max_lag");
    return best_lag;
}

} // namespace awva
