#include "awva/correlator.hpp"

#include "awva/errors.hpp"

#include <cmath>

namespace awva {

ThetaTrace theta_numeric(const SampledTrace& a, const SampledTrace& b) {
    a.validate();
    require_same_grid(a, b);
    ThetaTrace out;
    out.start_time = a.start_time;
    out.dt = a.dt;
    out.values.resize(a.size());
    CompensatedSum acc;
    double prev = a.samples[0] * b.samples[0];
    out.values[0] = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        double p = a.samples[i] * b.samples[i];
        acc.add(0.5 * a.dt * (prev + p));
        prev = p;
        out.values[i] = acc.value();
    }
    return out;
}

double theta_analytic(const PointerParams& params, double shift, double t, double t_start) {
    params.validate();
    const double a = params.amplitude;
    const double w = params.width;
    const double b = params.offset;
    const double c1 = params.center + shift;
    const double c2 = params.center;
    const double m = 0.5 * (c1 + c2);
    const double sqrt_pi = std::sqrt(M_PI);
    const double sqrt2 = std::sqrt(2.0);

    double u = shift / w;
    double gauss2 = a * a * std::exp(-u * u) * (sqrt_pi * w / 4.0) *
                    (std::erf(2.0 * (t - m) / w) - std::erf(2.0 * (t_start - m) / w));
    double cross = a * b * (sqrt_pi * w / (2.0 * sqrt2)) *
                   ((std::erf(sqrt2 * (t - c1) / w) - std::erf(sqrt2 * (t_start - c1) / w)) +
                    (std::erf(sqrt2 * (t - c2) / w) - std::erf(sqrt2 * (t_start - c2) / w)));
    double constant = b * b * (t - t_start);
    return gauss2 + cross + constant;
}

void StreamingCorrelator::update(double x, double y, double dt) {
    if (!(dt > 0.0))
        throw ConfigError("StreamingCorrelator: dt must be positive");
    double p = x * y;
    if (!primed_ && boundary_ == Boundary::first_sample) {
        primed_ = true;
        prev_product_ = p;
        return;
    }
    acc_.add(0.5 * dt * (prev_product_ + p));
    prev_product_ = p;
    primed_ = true;
}

} // namespace awva
