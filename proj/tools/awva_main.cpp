#include "awva/config.hpp"
#include "awva/errors.hpp"
#include "awva/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    bool seed_set = false;
    bool trials_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", o.seed, "override run.base_seed")->each([&](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--trials", o.trials, "override run.trials")->each([&](const std::string&) {
        o.trials_set = true;
    });
}

awva::SweepConfig load(const CommonOpts& o) {
    awva::SweepConfig c = awva::load_config(o.config_path);
    if (o.seed_set)
        c.base_seed = o.seed;
    if (o.trials_set)
        c.trials = o.trials;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Auto-correlative weak-value amplification simulator"};
    app.require_subcommand(1);

    CommonOpts sim_o, freq_o, noise_o, cal_o, ing_o;
    std::string observed_csv, in_csv;

    CLI::App* sim = app.add_subcommand("simulate", "dump single-shot waveforms and Theta traces");
    add_common(sim, sim_o);
    CLI::App* freq = app.add_subcommand("sweep-frequency", "sensitivity vs frequency and time shift");
    add_common(freq, freq_o);
    CLI::App* noise = app.add_subcommand("sweep-noise", "normalized sensitivities vs noise amplitude");
    add_common(noise, noise_o);
    CLI::App* cal = app.add_subcommand("calibrate-phase", "recover the circuit phase lag by curve alignment");
    add_common(cal, cal_o);
    cal->add_option("--observed", observed_csv, "measured Theta CSV (time_s + value); synthesized when omitted");
    CLI::App* ing = app.add_subcommand("ingest", "run a two-channel scope CSV through the chain");
    add_common(ing, ing_o);
    ing->add_option("--in", in_csv, "scope export: time_s + two channel columns")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return awva::cmd_simulate(load(sim_o), sim_o.out_dir);
        if (freq->parsed())
            return awva::cmd_sweep_frequency(load(freq_o), freq_o.out_dir);
        if (noise->parsed())
            return awva::cmd_sweep_noise(load(noise_o), noise_o.out_dir);
        if (cal->parsed())
            return awva::cmd_calibrate_phase(load(cal_o), cal_o.out_dir, observed_csv);
        if (ing->parsed())
            return awva::cmd_ingest(load(ing_o), in_csv, ing_o.out_dir);
    } catch (const awva::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return awva::kConfigError;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return awva::kConfigError;
    } catch (const awva::ParseError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return awva::kIoError;
    } catch (const awva::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return awva::kIoError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return awva::kIoError;
    }
    return awva::kOk;
}
