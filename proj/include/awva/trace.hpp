#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace awva {

/// Uniformly sampled voltage-vs-time record. Sample i sits at
/// start_time + i * dt. Immutable by convention once filled.
struct SampledTrace {
    double start_time = 0.0; ///< s
    double dt = 0.0;         ///< s
    std::vector<double> samples; ///< V

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double time_at(std::size_t i) const { return start_time + static_cast<double>(i) * dt; }
    double duration() const { return samples.empty() ? 0.0 : static_cast<double>(samples.size()) * dt; }

    void validate() const;
};

/// Running auto-correlation integral on the same grid convention as
/// SampledTrace. values[0] is the integral over the empty interval
/// [start, start], i.e. exactly zero before any circuit scaling.
/// Units: V^2*s for the ideal integral, V after circuit gain.
struct ThetaTrace {
    double start_time = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return start_time + static_cast<double>(i) * dt; }
};

/// Exact grid equality; no tolerance, resampling is never implied.
bool same_grid(const SampledTrace& a, const SampledTrace& b);

/// Throws GridMismatchError unless same_grid(a, b).
void require_same_grid(const SampledTrace& a, const SampledTrace& b);

/// Pointwise sum of two traces on a shared grid.
SampledTrace add(const SampledTrace& a, const SampledTrace& b);

/// Largest-magnitude sample value, sign preserved.
double peak_abs(const SampledTrace& t);

/// Compensated (Neumaier) running sum; keeps 1e6-sample cumulative
/// integrals reproducible to ~1e-12 relative.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace awva
