#pragma once

#include "awva/trace.hpp"
#include "awva/weak_measurement.hpp"

namespace awva {

/// Cumulative trapezoid integral of the pointwise product of two traces
/// on a shared grid: Theta(t) = integral from trace start to t of
/// a(t')*b(t') dt'. Theta at the first sample is exactly zero.
ThetaTrace theta_numeric(const SampledTrace& a, const SampledTrace& b);

/// Closed form of the same integral for Gaussian pointers: one channel
/// displaced by `shift`, both carrying the pointer offset. The pure
/// Gaussian part factors into exp(-shift^2/w^2) times a single Gaussian
/// integral centered midway between the two pulses; offset cross terms
/// and the constant term integrate through erf.
double theta_analytic(const PointerParams& params, double shift, double t,
                      double t_start = 0.0);

/// First-interval convention for StreamingCorrelator.
enum class Boundary {
    first_sample, ///< first update primes the trapezoid; matches theta_numeric
    zero          ///< signal assumed zero before the first sample (half-weight)
};

/// Constant-memory online form of theta_numeric. Feed sample pairs in
/// time order; value() returns the running integral. One consumer owns
/// an accumulator at a time.
class StreamingCorrelator {
public:
    explicit StreamingCorrelator(Boundary boundary = Boundary::first_sample)
        : boundary_(boundary) {}

    void update(double x, double y, double dt);
    double value() const { return acc_.value(); }

private:
    Boundary boundary_;
    bool primed_ = false;
    double prev_product_ = 0.0;
    CompensatedSum acc_;
};

} // namespace awva
