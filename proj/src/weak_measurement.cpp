#include "awva/weak_measurement.hpp"

#include "awva/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace awva {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < M_PI))
        throw std::domain_error("post-selection angle must lie in (0, pi), got " +
                                std::to_string(alpha));
}

} // namespace

void WeakMeasurementParams::validate() const {
    require_alpha(alpha);
    if (!(omega > 0.0))
        throw ConfigError("pointer spread omega must be positive");
    if (!(i0 > 0.0))
        throw ConfigError("normalization i0 must be positive");
    if (!std::isfinite(delta_t()))
        throw ConfigError("derived shift tau*cot(alpha) is not finite");
}

double WeakMeasurementParams::delta_t() const {
    return amplified_shift(tau, alpha);
}

double PointerParams::spread() const {
    return width / (2.0 * std::sqrt(2.0));
}

void PointerParams::validate() const {
    if (!(width > 0.0))
        throw ConfigError("pointer width must be positive");
    if (!(frequency > 0.0))
        throw ConfigError("pointer frequency must be positive");
    if (!(amplitude > 0.0))
        throw ConfigError("pointer amplitude must be positive");
    if (!(width < period()))
        throw ConfigError("pointer width must fit within one repetition period");
}

PointerParams PointerParams::scaled_to(double new_frequency) const {
    if (!(new_frequency > 0.0))
        throw ConfigError("target frequency must be positive");
    PointerParams out = *this;
    double s = frequency / new_frequency;
    out.width = width * s;
    out.center = center * s;
    out.frequency = new_frequency;
    return out;
}

double weak_value(double alpha) {
    require_alpha(alpha);
    return -1.0 / std::tan(alpha);
}

double amplified_shift(double tau, double alpha) {
    return tau * -weak_value(alpha);
}

double postselection_probability(double alpha) {
    require_alpha(alpha);
    double s = std::sin(alpha);
    return s * s;
}

double eval_pointer(const PointerParams& params, double shift, double t) {
    double u = (t - params.center - shift) / params.width;
    return params.amplitude * std::exp(-2.0 * u * u) + params.offset;
}

SampledTrace render_period(const PointerParams& params, double shift, double sample_rate,
                           double window_start) {
    params.validate();
    if (!(sample_rate >= 100.0 * params.frequency))
        throw ConfigError("sample_rate must be at least 100 samples per period");
    auto n = static_cast<std::size_t>(std::llround(sample_rate / params.frequency));
    SampledTrace out;
    out.start_time = window_start;
    out.dt = 1.0 / sample_rate;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = eval_pointer(params, shift, out.time_at(i));
    return out;
}

double centered_window_start(const PointerParams& params) {
    return params.center - 0.5 * params.period();
}

} // namespace awva
