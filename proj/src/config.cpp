#include "awva/config.hpp"

#include "awva/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace awva {

double SweepConfig::window_start() const {
    return window_centered ? centered_window_start(pointer) : 0.0;
}

void SweepConfig::validate() const {
    pointer.validate();
    circuit.validate();
    if (samples_per_period < 1000)
        throw ConfigError("samples_per_period must be at least 1000");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (!(sigma_fraction > 0.0) || !(sigma_fraction <= 1.0))
        throw ConfigError("noise sigma_fraction must lie in (0, 1]");
    if (!(max_failure_fraction >= 0.0) || !(max_failure_fraction <= 1.0))
        throw ConfigError("max_failure_fraction must lie in [0, 1]");
}

namespace {

using nlohmann::json;

double get_num(const json& j, const char* key, double fallback, bool* present = nullptr) {
    auto it = j.find(key);
    if (it == j.end()) {
        if (present) *present = false;
        return fallback;
    }
    if (!it->is_number())
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    if (present) *present = true;
    return it->get<double>();
}

std::vector<double> get_list(const json& j, const char* key, double unit) {
    auto it = j.find(key);
    std::vector<double> out;
    if (it == j.end())
        return out;
    if (!it->is_array())
        throw ConfigError(std::string("config key '") + key + "' must be an array");
    for (const auto& v : *it) {
        if (!v.is_number())
            throw ConfigError(std::string("config key '") + key + "' must contain numbers only");
        out.push_back(v.get<double>() * unit);
    }
    return out;
}

constexpr double kUs = 1e-6; // microseconds -> seconds
constexpr double kMv = 1e-3; // millivolts -> volts

} // namespace

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }

    SweepConfig c;
    if (root.contains("pointer")) {
        const json& p = root["pointer"];
        c.pointer.amplitude = get_num(p, "amplitude_v", 0.248);
        c.pointer.width = get_num(p, "width_us", 388.0) * kUs;
        c.pointer.center = get_num(p, "center_us", 171.0) * kUs;
        c.pointer.offset = get_num(p, "offset_v", -0.01);
        c.pointer.frequency = get_num(p, "frequency_hz", 200.0);
    } else {
        c.pointer = PointerParams{0.248, 388e-6, 171e-6, -0.01, 200.0};
    }

    if (root.contains("weak_measurement")) {
        const json& wm = root["weak_measurement"];
        c.alpha = get_num(wm, "alpha_rad", 0.0);
        c.tau = get_num(wm, "tau_us", 0.0) * kUs;
    }

    if (root.contains("circuit")) {
        const json& cc = root["circuit"];
        c.circuit.gain_multiplier = get_num(cc, "gain_multiplier_per_v", c.circuit.gain_multiplier);
        c.circuit.gain_integrator = get_num(cc, "gain_integrator_per_s", c.circuit.gain_integrator);
        c.circuit.phase_lag = get_num(cc, "phase_lag_us", c.circuit.phase_lag / kUs) * kUs;
        c.circuit.polarity = get_num(cc, "polarity", c.circuit.polarity);
        c.circuit.multiplier_input_range = get_num(cc, "multiplier_input_range_v", c.circuit.multiplier_input_range);
        c.circuit.multiplier_saturation = get_num(cc, "multiplier_saturation_v", c.circuit.multiplier_saturation);
        c.circuit.integrator_saturation = get_num(cc, "integrator_saturation_v", c.circuit.integrator_saturation);
    }

    if (root.contains("sampling")) {
        const json& s = root["sampling"];
        c.samples_per_period = static_cast<std::size_t>(get_num(s, "samples_per_period", 5000.0));
        if (s.contains("window")) {
            std::string wname = s["window"].get<std::string>();
            if (wname == "centered")
                c.window_centered = true;
            else if (wname == "zero_start")
                c.window_centered = false;
            else
                throw ConfigError("sampling.window must be 'centered' or 'zero_start'");
        }
    }

    if (root.contains("noise")) {
        const json& nj = root["noise"];
        c.sigma_fraction = get_num(nj, "sigma_fraction", c.sigma_fraction);
        if (nj.contains("coupling")) {
            std::string mode = nj["coupling"].get<std::string>();
            if (mode == "independent")
                c.shared_noise = false;
            else if (mode == "shared")
                c.shared_noise = true;
            else
                throw ConfigError("noise.coupling must be 'independent' or 'shared'");
        }
    }

    if (root.contains("swva")) {
        const json& s = root["swva"];
        if (s.contains("method")) {
            std::string m = s["method"].get<std::string>();
            if (m == "threshold_centroid")
                c.swva.method = SwvaMethod::threshold_centroid;
            else if (m == "matched_filter")
                c.swva.method = SwvaMethod::matched_filter;
            else
                throw ConfigError("swva.method must be 'threshold_centroid' or 'matched_filter'");
        }
        bool have = false;
        double v = get_num(s, "smoother_window_us", -1.0, &have);
        if (have) c.swva.smoother_window = v * kUs;
        v = get_num(s, "centroid_half_window_us", -1.0, &have);
        if (have) c.swva.centroid_half_window = v * kUs;
        v = get_num(s, "threshold_drop_v", -1.0, &have);
        if (have) c.swva.threshold_drop = v;
    }

    if (root.contains("run")) {
        const json& r = root["run"];
        c.trials = static_cast<std::size_t>(get_num(r, "trials", static_cast<double>(c.trials)));
        c.base_seed = static_cast<std::uint64_t>(get_num(r, "base_seed", 1.0));
        c.workers = static_cast<unsigned>(get_num(r, "workers", 0.0));
        c.max_failure_fraction = get_num(r, "max_failure_fraction", c.max_failure_fraction);
    }

    if (root.contains("simulate")) {
        const json& s = root["simulate"];
        bool have = false;
        double dtv = get_num(s, "delta_t_us", 0.0, &have);
        if (have)
            c.simulate_delta_t = dtv * kUs;
        else if (c.alpha > 0.0)
            c.simulate_delta_t = amplified_shift(c.tau, c.alpha);
        c.simulate_noise = get_num(s, "noise_amplitude_mv", 0.0) * kMv;
    } else if (c.alpha > 0.0) {
        c.simulate_delta_t = amplified_shift(c.tau, c.alpha);
    }

    if (root.contains("sweep_frequency")) {
        const json& s = root["sweep_frequency"];
        c.frequencies = get_list(s, "frequencies_hz", 1.0);
        c.delta_ts = get_list(s, "delta_ts_us", kUs);
        if (s.contains("scale_delta_t_with_frequency"))
            c.scale_delta_t_with_frequency = s["scale_delta_t_with_frequency"].get<bool>();
        c.sweep_frequency_noise = get_num(s, "noise_amplitude_mv", 0.0) * kMv;
    }

    if (root.contains("sweep_noise")) {
        const json& s = root["sweep_noise"];
        c.sweep_noise_delta_t = get_num(s, "delta_t_us", 50.0) * kUs;
        c.noise_amplitudes = get_list(s, "noise_amplitudes_mv", kMv);
    }

    c.validate();
    return c;
}

} // namespace awva
