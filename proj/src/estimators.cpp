#include "awva/estimators.hpp"

#include "awva/errors.hpp"
#include "awva/noise.hpp"
#include "awva/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace awva {

AmplitudeReading read_amplitude(const ThetaTrace& theta) {
    if (theta.values.empty())
        throw ConfigError("cannot read amplitude of an empty trace");
    std::size_t best = 0;
    for (std::size_t i = 1; i < theta.values.size(); ++i)
        if (std::abs(theta.values[i]) > std::abs(theta.values[best]))
            best = i;
    return AmplitudeReading{theta.values[best], theta.time_at(best), 1, 0.0};
}

double sensitivity_k(double max_theta_ref, double max_theta_shifted, double delta_t) {
    if (delta_t == 0.0)
        throw std::domain_error("sensitivity_k: delta_t must be non-zero");
    // V/s -> mV/us
    return (max_theta_ref - max_theta_shifted) / delta_t * 1e-3;
}

double normalize_awva(double k, double k_ref) {
    if (k_ref == 0.0)
        throw std::domain_error("normalize_awva: reference sensitivity is zero");
    return k / k_ref;
}

double normalize_swva(double delta_t_scope, double delta_t_true) {
    if (delta_t_true == 0.0)
        throw std::domain_error("normalize_swva: true delay is zero");
    return delta_t_scope / delta_t_true;
}

namespace {

struct SwvaResolved {
    SwvaMethod method;
    std::size_t smoother_samples;  // 0 or 1 -> none
    std::size_t centroid_half_win; // samples
    double threshold_drop;         // V
};

SwvaResolved resolve_swva(const SwvaOptions& opt, const PointerParams& tmpl, double dt) {
    SwvaResolved r;
    r.method = opt.method;
    double win = opt.smoother_window < 0.0 ? tmpl.width / 10.0 : opt.smoother_window;
    r.smoother_samples = win <= 0.0 ? 1 : std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(win / dt)));
    double half = opt.centroid_half_window < 0.0 ? 0.75 * tmpl.width : opt.centroid_half_window;
    r.centroid_half_win = static_cast<std::size_t>(std::llround(half / dt));
    r.threshold_drop = opt.threshold_drop < 0.0 ? 0.5 * tmpl.amplitude : opt.threshold_drop;
    if (!(r.threshold_drop > 0.0))
        throw ConfigError("swva threshold drop must be positive");
    return r;
}

// Centered moving average with shrinking edge windows.
void moving_average(const double* y, std::size_t n, std::size_t win, std::vector<double>& out) {
    out.resize(n);
    if (win <= 1) {
        std::copy(y, y + n, out.begin());
        return;
    }
    std::size_t h = win / 2;
    double acc = 0.0;
    std::size_t lo = 0, hi = 0; // current window [lo, hi)
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t want_lo = i > h ? i - h : 0;
        std::size_t want_hi = std::min(n, i + h + 1);
        while (hi < want_hi) acc += y[hi++];
        while (lo < want_lo) acc -= y[lo++];
        out[i] = acc / static_cast<double>(hi - lo);
    }
}

std::optional<double> swva_estimate_impl(const double* y, std::size_t n, double start_time,
                                         double dt, const PointerParams& tmpl,
                                         const SwvaResolved& r, std::vector<double>& scratch) {
    if (n == 0)
        return std::nullopt;

    if (r.method == SwvaMethod::matched_filter) {
        // correlate with the clean zero-offset pulse over +-2 widths
        std::size_t m = 2 * static_cast<std::size_t>(std::llround(2.0 * tmpl.width / dt)) + 1;
        if (m >= n)
            return std::nullopt;
        scratch.resize(m);
        auto mid = static_cast<double>((m - 1) / 2);
        for (std::size_t j = 0; j < m; ++j) {
            double x = (static_cast<double>(j) - mid) * dt / tmpl.width;
            scratch[j] = tmpl.amplitude * std::exp(-2.0 * x * x);
        }
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_l = 0;
        for (std::size_t l = 0; l + m <= n; ++l) {
            double s = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                s += y[l + j] * scratch[j];
            if (s > best) {
                best = s;
                best_l = l;
            }
        }
        double est_center = start_time + (static_cast<double>(best_l) + mid) * dt;
        return est_center - tmpl.center;
    }

    const double* sm = y;
    if (r.smoother_samples > 1) {
        moving_average(y, n, r.smoother_samples, scratch);
        sm = scratch.data();
    }
    std::size_t peak = 0;
    double vmax = sm[0], vmin = sm[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (sm[i] > vmax) {
            vmax = sm[i];
            peak = i;
        }
        vmin = std::min(vmin, sm[i]);
    }
    if (vmax == vmin)
        return std::nullopt; // flat trace, no identifiable peak

    double thr = vmax - r.threshold_drop;
    std::size_t lo = peak > r.centroid_half_win ? peak - r.centroid_half_win : 0;
    std::size_t hi = std::min(n, peak + r.centroid_half_win + 1);
    double wsum = 0.0, tsum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double wgt = sm[i] - thr;
        if (wgt > 0.0) {
            wsum += wgt;
            tsum += wgt * (start_time + static_cast<double>(i) * dt);
        }
    }
    if (wsum <= 0.0)
        return std::nullopt;
    return tsum / wsum - tmpl.center;
}

// Same arithmetic as apply_circuit, fused: returns max |output| without
// materializing the trace. x/y already carry any injected noise.
double max_abs_circuit_response(const double* x, const double* y, std::size_t n, double dt,
                                const CircuitParams& p, SaturationReport* report) {
    auto clip = [](double v, double bound, bool& c) {
        if (v > bound) { c = true; return bound; }
        if (v < -bound) { c = true; return -bound; }
        return v;
    };
    SaturationReport local;
    auto stage = [&](std::size_t i) {
        bool c = false;
        double xin = clip(x[i], p.multiplier_input_range, c);
        double yin = clip(y[i], p.multiplier_input_range, c);
        double m = clip(p.gain_multiplier * xin * yin, p.multiplier_saturation, c);
        if (c) ++local.multiplier_clips;
        return m;
    };
    CompensatedSum acc;
    double prev = stage(0);
    double best = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double m = stage(i);
        acc.add(0.5 * dt * (prev + m));
        prev = m;
        bool c = false;
        double v = clip(p.gain_integrator * acc.value(), p.integrator_saturation, c);
        if (c) ++local.integrator_clips;
        best = std::max(best, std::abs(v));
    }
    if (report) {
        report->multiplier_clips += local.multiplier_clips;
        report->integrator_clips += local.integrator_clips;
    }
    return best;
}

void fill_noisy(std::vector<double>& dst, const std::vector<double>& clean,
                std::uint64_t seed, double amplitude, double sigma_fraction) {
    dst.resize(clean.size());
    if (amplitude == 0.0) {
        std::copy(clean.begin(), clean.end(), dst.begin());
        return;
    }
    GaussianStream g(Philox4x32(seed));
    const double sigma = sigma_fraction * amplitude;
    for (std::size_t i = 0; i < clean.size(); ++i)
        dst[i] = clean[i] + std::clamp(sigma * g.next(), -amplitude, amplitude);
}

struct ChunkAccum {
    double ka_sum = 0.0, ka_sumsq = 0.0;
    double kw_sum = 0.0, kw_sumsq = 0.0;
    std::size_t kw_count = 0, failures = 0, count = 0;
};

constexpr std::size_t kChunkTrials = 250;

} // namespace

std::optional<double> swva_delay_estimate(const SampledTrace& noisy_i1,
                                          const PointerParams& tmpl,
                                          const SwvaOptions& options) {
    noisy_i1.validate();
    tmpl.validate();
    SwvaResolved r = resolve_swva(options, tmpl, noisy_i1.dt);
    std::vector<double> scratch;
    return swva_estimate_impl(noisy_i1.samples.data(), noisy_i1.size(), noisy_i1.start_time,
                              noisy_i1.dt, tmpl, r, scratch);
}

TrialResults run_trials(const TrialConfig& config, std::size_t trials) {
    if (trials < 1)
        throw ConfigError("run_trials needs at least one trial");
    config.pointer.validate();
    config.circuit.validate();
    if (config.delta_t == 0.0)
        throw std::domain_error("run_trials: delta_t must be non-zero");

    const double window_start = centered_window_start(config.pointer);
    const SampledTrace i_shifted = render_period(config.pointer, config.delta_t,
                                                 config.sample_rate, window_start);
    const SampledTrace i_ref = render_period(config.pointer, 0.0, config.sample_rate,
                                             window_start);
    const std::size_t n = i_ref.size();
    const double dt = i_ref.dt;
    const SwvaResolved swva_r = resolve_swva(config.swva, config.pointer, dt);

    // noise-free reference sensitivity
    const double m_shift_clean = max_abs_circuit_response(
        i_shifted.samples.data(), i_ref.samples.data(), n, dt, config.circuit, nullptr);
    const double m_ref_clean = max_abs_circuit_response(
        i_ref.samples.data(), i_ref.samples.data(), n, dt, config.circuit, nullptr);
    const double k_ref = sensitivity_k(m_ref_clean, m_shift_clean, config.delta_t);
    if (k_ref == 0.0)
        throw CalibrationError("noise-free reference sensitivity is zero");

    const std::size_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<ChunkAccum> chunks(n_chunks);
    std::atomic<std::size_t> next_chunk{0};

    auto worker = [&]() {
        std::vector<double> n1d, n2d, n10, n20, scratch;
        for (;;) {
            std::size_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks)
                return;
            ChunkAccum acc;
            std::size_t begin = c * kChunkTrials;
            std::size_t end = std::min(trials, begin + kChunkTrials);
            for (std::size_t t = begin; t < end; ++t) {
                std::uint64_t s0 = Philox4x32::derive_seed(config.base_seed, 4 * t);
                std::uint64_t s1 = Philox4x32::derive_seed(config.base_seed, 4 * t + 1);
                std::uint64_t s2 = Philox4x32::derive_seed(config.base_seed, 4 * t + 2);
                std::uint64_t s3 = Philox4x32::derive_seed(config.base_seed, 4 * t + 3);
                if (config.shared_noise) {
                    s1 = s0;
                    s3 = s2;
                }
                fill_noisy(n1d, i_shifted.samples, s0, config.noise_amplitude, config.sigma_fraction);
                fill_noisy(n2d, i_ref.samples, s1, config.noise_amplitude, config.sigma_fraction);
                fill_noisy(n10, i_ref.samples, s2, config.noise_amplitude, config.sigma_fraction);
                fill_noisy(n20, i_ref.samples, s3, config.noise_amplitude, config.sigma_fraction);

                double m_shift = max_abs_circuit_response(n1d.data(), n2d.data(), n, dt,
                                                          config.circuit, nullptr);
                double m_ref = max_abs_circuit_response(n10.data(), n20.data(), n, dt,
                                                        config.circuit, nullptr);
                double ka = normalize_awva(sensitivity_k(m_ref, m_shift, config.delta_t), k_ref);
                acc.ka_sum += ka;
                acc.ka_sumsq += ka * ka;
                ++acc.count;

                auto est = swva_estimate_impl(n1d.data(), n, window_start, dt, config.pointer,
                                              swva_r, scratch);
                if (est) {
                    double kw = normalize_swva(*est, config.delta_t);
                    acc.kw_sum += kw;
                    acc.kw_sumsq += kw * kw;
                    ++acc.kw_count;
                } else {
                    ++acc.failures;
                }
            }
            chunks[c] = acc;
        }
    };

    unsigned n_workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, n_chunks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    // merge in fixed chunk order: results do not depend on scheduling
    ChunkAccum total;
    for (const ChunkAccum& c : chunks) {
        total.ka_sum += c.ka_sum;
        total.ka_sumsq += c.ka_sumsq;
        total.kw_sum += c.kw_sum;
        total.kw_sumsq += c.kw_sumsq;
        total.kw_count += c.kw_count;
        total.failures += c.failures;
        total.count += c.count;
    }

    auto finish = [&](double sum, double sumsq, std::size_t cnt) {
        SensitivityStats s;
        s.trials = trials;
        s.noise_amplitude = config.noise_amplitude;
        s.snr = snr_db(peak_abs(i_shifted), config.noise_amplitude);
        if (cnt == 0)
            return s;
        double mean = sum / static_cast<double>(cnt);
        double var = std::max(0.0, sumsq / static_cast<double>(cnt) - mean * mean);
        s.mean = mean;
        s.std_dev = std::sqrt(var);
        return s;
    };
    TrialResults out;
    out.awva = finish(total.ka_sum, total.ka_sumsq, total.count);
    out.swva = finish(total.kw_sum, total.kw_sumsq, total.kw_count);
    out.swva.failures = total.failures;
    return out;
}

} // namespace awva
