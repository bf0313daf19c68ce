#include "awva/trace.hpp"

#include "awva/errors.hpp"

#include <cmath>
#include <string>

namespace awva {

void SampledTrace::validate() const {
    if (!(dt > 0.0))
        throw ConfigError("SampledTrace: dt must be positive, got " + std::to_string(dt));
    if (samples.empty())
        throw ConfigError("SampledTrace: samples must be non-empty");
}

bool same_grid(const SampledTrace& a, const SampledTrace& b) {
    return a.start_time == b.start_time && a.dt == b.dt && a.samples.size() == b.samples.size();
}

void require_same_grid(const SampledTrace& a, const SampledTrace& b) {
    if (!same_grid(a, b))
        throw GridMismatchError("traces do not share a sampling grid (start_time/dt/length)");
}

SampledTrace add(const SampledTrace& a, const SampledTrace& b) {
    require_same_grid(a, b);
    SampledTrace out;
    out.start_time = a.start_time;
    out.dt = a.dt;
    out.samples.resize(a.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        out.samples[i] = a.samples[i] + b.samples[i];
    return out;
}

double peak_abs(const SampledTrace& t) {
    double best = 0.0;
    for (double v : t.samples)
        if (std::abs(v) > std::abs(best))
            best = v;
    return std::abs(best);
}

} // namespace awva
