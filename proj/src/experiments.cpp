#include "awva/experiments.hpp"

#include "awva/correlator.hpp"
#include "awva/errors.hpp"
#include "awva/estimators.hpp"
#include "awva/noise.hpp"
#include "awva/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace awva {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : path_(path.string()) {
        out_.open(path);
        if (!out_)
            throw IoError("cannot open output file for writing: " + path_);
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
        if (!out_)
            throw IoError("write failed: " + path_);
    }

private:
    std::string path_;
    std::ofstream out_;
};

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir.empty() ? "." : out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory: " + dir.string());
    return dir;
}

} // namespace

int cmd_simulate(const SweepConfig& config, const std::string& out_dir) {
    fs::path dir = prepare_out_dir(out_dir);
    const double rate = config.sample_rate();
    const double start = config.window_start();
    SampledTrace i1 = render_period(config.pointer, config.simulate_delta_t, rate, start);
    SampledTrace i2 = render_period(config.pointer, 0.0, rate, start);

    SampledTrace n1 = i1, n2 = i2;
    if (config.simulate_noise > 0.0) {
        NoiseSpec s1{config.simulate_noise, Philox4x32::derive_seed(config.base_seed, 0),
                     config.sigma_fraction};
        NoiseSpec s2{config.simulate_noise,
                     config.shared_noise ? s1.seed : Philox4x32::derive_seed(config.base_seed, 1),
                     config.sigma_fraction};
        n1 = add(i1, gen_noise(i1, s1));
        n2 = add(i2, config.shared_noise ? gen_noise(i1, s1) : gen_noise(i2, s2));
    }

    ThetaTrace ideal = theta_numeric(n1, n2);
    ThetaTrace scope = apply_circuit(n1, n2, config.circuit);

    // scope output is delayed by the phase lag; align it to the shared
    // time column by grid index (output is zero before the lag elapses)
    auto lag = static_cast<std::size_t>(std::llround(config.circuit.phase_lag / i1.dt));

    CsvWriter csv(dir / "waveforms.csv",
                  {"time_s", "i1_v", "i2_v", "i1_noisy_v", "i2_noisy_v",
                   "theta_v2s", "theta_scope_v"});
    for (std::size_t i = 0; i < i1.size(); ++i) {
        double scope_v = i >= lag ? scope.values[i - lag] : 0.0;
        csv.row({i1.time_at(i), i1.samples[i], i2.samples[i], n1.samples[i], n2.samples[i],
                 ideal.values[i], scope_v});
    }
    return kOk;
}

int cmd_sweep_frequency(const SweepConfig& config, const std::string& out_dir) {
    fs::path dir = prepare_out_dir(out_dir);
    if (config.frequencies.empty() || config.delta_ts.empty())
        throw ConfigError("sweep_frequency needs frequencies_hz and delta_ts_us");

    CsvWriter csv(dir / "frequency_sweep.csv",
                  {"frequency_hz", "delta_t_us", "max_theta_ref_mv", "max_theta_shifted_mv",
                   "ratio", "ratio_predicted", "k_mv_per_us", "k_std_mv_per_us", "trials"});

    for (double f : config.frequencies) {
        PointerParams ptr = config.pointer.scaled_to(f);
        const double rate = static_cast<double>(config.samples_per_period) * f;
        const double start = config.window_centered ? centered_window_start(ptr) : 0.0;
        const double base_f = config.pointer.frequency;
        for (double dt0 : config.delta_ts) {
            double shift = config.scale_delta_t_with_frequency ? dt0 * base_f / f : dt0;
            SampledTrace i1 = render_period(ptr, shift, rate, start);
            SampledTrace i2 = render_period(ptr, 0.0, rate, start);

            double omega = ptr.spread();
            double predicted = std::exp(-shift * shift / (8.0 * omega * omega));

            if (config.sweep_frequency_noise > 0.0 && config.trials > 1) {
                // repeated noisy amplitude readings, scope-style
                double sum_r = 0, sumsq_r = 0, sum_s = 0, sumsq_s = 0, sum_k = 0, sumsq_k = 0;
                auto n = static_cast<double>(config.trials);
                for (std::size_t t = 0; t < config.trials; ++t) {
                    NoiseSpec a{config.sweep_frequency_noise,
                                Philox4x32::derive_seed(config.base_seed, 4 * t), config.sigma_fraction};
                    NoiseSpec b{config.sweep_frequency_noise,
                                Philox4x32::derive_seed(config.base_seed, 4 * t + 1), config.sigma_fraction};
                    NoiseSpec c2{config.sweep_frequency_noise,
                                 Philox4x32::derive_seed(config.base_seed, 4 * t + 2), config.sigma_fraction};
                    NoiseSpec d{config.sweep_frequency_noise,
                                Philox4x32::derive_seed(config.base_seed, 4 * t + 3), config.sigma_fraction};
                    double ms = std::abs(read_amplitude(theta_with_noise(i1, i2, a, b, config.circuit)).max_value);
                    double mr = std::abs(read_amplitude(theta_with_noise(i2, i2, c2, d, config.circuit)).max_value);
                    double k = sensitivity_k(mr, ms, shift);
                    sum_r += mr; sumsq_r += mr * mr;
                    sum_s += ms; sumsq_s += ms * ms;
                    sum_k += k; sumsq_k += k * k;
                }
                auto std_of = [n](double s, double sq) {
                    double m = s / n;
                    return std::sqrt(std::max(0.0, sq / n - m * m));
                };
                double mr = sum_r / n, ms = sum_s / n;
                csv.row({f, shift / 1e-6, mr * 1e3, ms * 1e3, ms / mr, predicted,
                         sum_k / n, std_of(sum_k, sumsq_k), n});
            } else {
                double mr = std::abs(read_amplitude(apply_circuit(i2, i2, config.circuit)).max_value);
                double ms = std::abs(read_amplitude(apply_circuit(i1, i2, config.circuit)).max_value);
                csv.row({f, shift / 1e-6, mr * 1e3, ms * 1e3, ms / mr, predicted,
                         sensitivity_k(mr, ms, shift), 0.0, 1.0});
            }
        }
    }
    return kOk;
}

int cmd_sweep_noise(const SweepConfig& config, const std::string& out_dir) {
    fs::path dir = prepare_out_dir(out_dir);
    if (config.noise_amplitudes.empty())
        throw ConfigError("sweep_noise needs noise_amplitudes_mv");

    TrialConfig tc;
    tc.pointer = config.pointer;
    tc.circuit = config.circuit;
    tc.delta_t = config.sweep_noise_delta_t;
    tc.sample_rate = config.sample_rate();
    tc.sigma_fraction = config.sigma_fraction;
    tc.swva = config.swva;
    tc.shared_noise = config.shared_noise;
    tc.workers = config.workers;

    CsvWriter csv(dir / "noise_sweep.csv",
                  {"noise_amplitude_mv", "snr_db", "kw_mean", "kw_std", "ka_mean", "ka_std",
                   "swva_failures", "trials"});

    bool too_many_failures = false;
    for (std::size_t i = 0; i < config.noise_amplitudes.size(); ++i) {
        tc.noise_amplitude = config.noise_amplitudes[i];
        // decorrelate rows; trial seeds derive from this row seed
        tc.base_seed = Philox4x32::derive_seed(config.base_seed, 0x5eed0000u + i);
        TrialResults r = run_trials(tc, config.trials);
        csv.row({tc.noise_amplitude * 1e3, r.swva.snr, r.swva.mean, r.swva.std_dev,
                 r.awva.mean, r.awva.std_dev, static_cast<double>(r.swva.failures),
                 static_cast<double>(r.swva.trials)});
        if (static_cast<double>(r.swva.failures) >
            config.max_failure_fraction * static_cast<double>(config.trials))
            too_many_failures = true;
    }
    return too_many_failures ? kEstimationFailure : kOk;
}

namespace {

// Generic uniform-grid CSV reader: returns (times, column values).
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data; // column-major
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open input file: " + path);
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (line_no == 1) {
                t.columns.push_back(cell);
                t.data.emplace_back();
            } else {
                if (col >= t.columns.size())
                    throw ParseError("row has more fields than the header", line_no);
                char* end = nullptr;
                double v = std::strtod(cell.c_str(), &end);
                if (end == cell.c_str() || *end != '\0')
                    throw ParseError("malformed numeric field '" + cell + "'", line_no);
                t.data[col].push_back(v);
            }
            ++col;
        }
        if (line_no > 1 && col != t.columns.size())
            throw ParseError("row has fewer fields than the header", line_no);
    }
    if (t.columns.empty())
        throw ParseError("empty file: " + path, 0);
    return t;
}

double uniform_dt(const std::vector<double>& times) {
    if (times.size() < 2)
        throw ParseError("need at least two samples to establish a time grid", 0);
    double dt = times[1] - times[0];
    if (!(dt > 0.0))
        throw ParseError("time column must be strictly increasing", 2);
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
        double step = times[i + 1] - times[i];
        if (std::abs(step - dt) > 1e-3 * dt)
            throw ParseError("non-uniform time grid (step deviates by more than 0.1%)", i + 2);
    }
    return dt;
}

} // namespace

std::pair<SampledTrace, SampledTrace> ingest_scope_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    std::size_t time_col = t.columns.size();
    std::vector<std::size_t> value_cols;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == "time_s")
            time_col = i;
        else
            value_cols.push_back(i);
    }
    if (time_col == t.columns.size())
        throw ParseError("missing required column 'time_s'", 1);
    if (value_cols.size() < 2)
        throw ParseError("need two value columns besides 'time_s'", 1);

    const auto& times = t.data[time_col];
    double dt = uniform_dt(times);
    SampledTrace a, b;
    a.start_time = b.start_time = times[0];
    a.dt = b.dt = dt;
    a.samples = t.data[value_cols[0]];
    b.samples = t.data[value_cols[1]];
    return {a, b};
}

int cmd_calibrate_phase(const SweepConfig& config, const std::string& out_dir,
                        const std::string& observed_csv) {
    fs::path dir = prepare_out_dir(out_dir);
    const double rate = config.sample_rate();
    const double start = config.window_start();
    SampledTrace i2 = render_period(config.pointer, 0.0, rate, start);
    ThetaTrace ideal = theta_numeric(i2, i2);

    ThetaTrace observed;
    if (!observed_csv.empty()) {
        CsvTable t = read_csv(observed_csv);
        if (t.columns.size() < 2)
            throw ParseError("observed CSV needs a time column and a value column", 1);
        observed.start_time = t.data[0].empty() ? 0.0 : t.data[0][0];
        observed.dt = uniform_dt(t.data[0]);
        observed.values = t.data[1];
    } else {
        SampledTrace c1 = i2, c2 = i2;
        if (config.simulate_noise > 0.0) {
            NoiseSpec s1{config.simulate_noise, Philox4x32::derive_seed(config.base_seed, 0),
                         config.sigma_fraction};
            NoiseSpec s2{config.simulate_noise, Philox4x32::derive_seed(config.base_seed, 1),
                         config.sigma_fraction};
            c1 = add(i2, gen_noise(i2, s1));
            c2 = add(i2, gen_noise(i2, s2));
        }
        observed = apply_circuit(c1, c2, config.circuit);
    }

    double recovered = calibrate_phase(observed, ideal);
    CsvWriter csv(dir / "calibration.csv",
                  {"phase_lag_config_us", "phase_lag_recovered_us", "resolution_us"});
    csv.row({config.circuit.phase_lag / 1e-6, recovered / 1e-6, ideal.dt / 1e-6});
    return kOk;
}

int cmd_ingest(const SweepConfig& config, const std::string& in_csv, const std::string& out_dir) {
    fs::path dir = prepare_out_dir(out_dir);
    auto [ch1, ch2] = ingest_scope_csv(in_csv);
    ThetaTrace ideal = theta_numeric(ch1, ch2);
    ThetaTrace scope = apply_circuit(ch1, ch2, config.circuit);
    AmplitudeReading ideal_amp = read_amplitude(ideal);
    AmplitudeReading scope_amp = read_amplitude(scope);

    CsvWriter csv(dir / "ingest_theta.csv", {"time_s", "theta_v2s", "theta_scope_v"});
    auto lag = static_cast<std::size_t>(std::llround(config.circuit.phase_lag / ch1.dt));
    for (std::size_t i = 0; i < ideal.size(); ++i)
        csv.row({ideal.time_at(i), ideal.values[i],
                 i >= lag ? scope.values[i - lag] : 0.0});

    CsvWriter summary(dir / "ingest_summary.csv",
                      {"max_theta_v2s", "max_theta_time_s", "max_scope_v", "max_scope_time_s"});
    summary.row({ideal_amp.max_value, ideal_amp.max_time, scope_amp.max_value, scope_amp.max_time});
    return kOk;
}

} // namespace awva
