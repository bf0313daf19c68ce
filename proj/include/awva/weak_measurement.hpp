#pragma once

#include "awva/trace.hpp"

namespace awva {

/// Pre/post-selection parameters of the weak measurement and the
/// Gaussian pointer it displaces. alpha is the post-selection angle,
/// tau the coupling strength (the estimand).
struct WeakMeasurementParams {
    double alpha = 0.0; ///< rad, in (0, pi)
    double tau = 0.0;   ///< s
    double omega = 0.0; ///< s, pointer spread
    double t0 = 0.0;    ///< s, pointer center
    double i0 = 1.0;    ///< normalization factor

    void validate() const;
    /// Amplified pointer displacement tau * cot(alpha).
    double delta_t() const;
};

/// Experimental Gaussian pointer, A*exp[-2((t - center)/width)^2] + offset,
/// repeating at `frequency`. The theory spread is omega = width / (2*sqrt(2)).
struct PointerParams {
    double amplitude = 0.0; ///< V
    double width = 0.0;     ///< s
    double center = 0.0;    ///< s
    double offset = 0.0;    ///< V
    double frequency = 0.0; ///< Hz

    double period() const { return 1.0 / frequency; }
    double spread() const; ///< omega
    void validate() const;

    /// Same duty cycle at another repetition frequency: width and center
    /// scale by frequency / new_frequency.
    PointerParams scaled_to(double new_frequency) const;
};

/// Weak value A_w = -cot(alpha). Unbounded as alpha -> 0+.
double weak_value(double alpha);

/// Amplified time shift tau * cot(alpha).
double amplified_shift(double tau, double alpha);

/// Post-selection success probability sin^2(alpha), in [0, 1].
double postselection_probability(double alpha);

/// Pointer value at time t with the pulse displaced by `shift`.
double eval_pointer(const PointerParams& params, double shift, double t);

/// Sample one repetition period [window_start, window_start + 1/f) at
/// `sample_rate`. Requires sample_rate >= 100 * frequency.
SampledTrace render_period(const PointerParams& params, double shift, double sample_rate,
                           double window_start = 0.0);

/// Window start that centers the pulse in one period; keeps the full
/// Gaussian support inside the analysis window at every frequency.
double centered_window_start(const PointerParams& params);

} // namespace awva
