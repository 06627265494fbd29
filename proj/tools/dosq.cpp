// Command-line front end: trajectory, wavefunction, expand and verify.
#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dosq/config.hpp"
#include "dosq/errors.hpp"
#include "dosq/run.hpp"

namespace {

enum Exit { ok = 0, check_failure = 1, config_error = 2, numeric_error = 3 };

// Flags mirror RunConfig; each one overrides the config file only when given.
struct Flags {
    std::string config_path, out_path, preset, ordering, output;
    double omega = 0, force = 0, c_re = 0, c_im = 0, x0 = 0, p0 = 0, a_re = 0, a_im = 0, r = 0, theta = 0;
    double tau_max = 0, tau = 0, grid_k = 0, ode_tol = 0, quad_tol = 0, series_tol = 0;
    int tau_steps = 0, m = 0, grid_points = 0, expand_n = 0;
    std::uint64_t seed = 0;
    std::vector<CLI::Option*> opts;
    CLI::Option *o_preset{}, *o_omega{}, *o_force{}, *o_cre{}, *o_cim{}, *o_x0{}, *o_p0{}, *o_are{}, *o_aim{}, *o_r{},
        *o_theta{}, *o_ordering{}, *o_tau_max{}, *o_tau_steps{}, *o_m{}, *o_tau{}, *o_k{}, *o_points{}, *o_n{},
        *o_ode{}, *o_quad{}, *o_series{}, *o_output{}, *o_seed{};

    void attach(CLI::App* app) {
        app->add_option("-c,--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        app->add_option("-o,--out", out_path, "write output to this file instead of stdout");
        o_preset = app->add_option("--preset", preset, "free | harmonic | repulsive | linear | driven | custom");
        o_omega = app->add_option("--omega", omega);
        o_force = app->add_option("--force", force);
        o_cre = app->add_option("--c-zero-re", c_re);
        o_cim = app->add_option("--c-zero-im", c_im);
        o_x0 = app->add_option("--x0", x0);
        o_p0 = app->add_option("--p0", p0);
        o_are = app->add_option("--alpha-re", a_re, "set alpha directly (overrides x0, p0)");
        o_aim = app->add_option("--alpha-im", a_im);
        o_r = app->add_option("--r", r, "squeeze magnitude");
        o_theta = app->add_option("--theta", theta, "squeeze angle");
        o_ordering = app->add_option("--ordering", ordering, "alpha_z | z_alpha");
        o_tau_max = app->add_option("--tau-max", tau_max);
        o_tau_steps = app->add_option("--tau-steps", tau_steps);
        o_m = app->add_option("--m", m, "number state index (wavefunction)");
        o_tau = app->add_option("--tau", tau, "evaluation time (wavefunction)");
        o_k = app->add_option("--grid-k", grid_k, "grid half-width in units of delta x");
        o_points = app->add_option("--grid-points", grid_points);
        o_n = app->add_option("--expand-n", expand_n, "truncation index, 0 for adaptive");
        o_ode = app->add_option("--ode-tol", ode_tol);
        o_quad = app->add_option("--quad-tol", quad_tol);
        o_series = app->add_option("--series-tol", series_tol);
        o_output = app->add_option("--output", output, "csv | json");
        o_seed = app->add_option("--seed", seed);
    }

    dosq::RunConfig build() const {
        dosq::RunConfig c;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            c = dosq::config_from_json(ss.str());
        }
        auto given = [](CLI::Option* o) { return o->count() > 0; };
        if (given(o_preset)) c.potential.preset = preset;
        if (given(o_omega)) c.potential.omega = omega;
        if (given(o_force)) c.potential.force = force;
        if (given(o_cre)) c.potential.c_zero_re = c_re;
        if (given(o_cim)) c.potential.c_zero_im = c_im;
        if (given(o_x0)) c.x0 = x0;
        if (given(o_p0)) c.p0 = p0;
        if (given(o_are) || given(o_aim))
            c.alpha = std::complex<double>(given(o_are) ? a_re : c.alpha.value_or(0).real(),
                                           given(o_aim) ? a_im : c.alpha.value_or(0).imag());
        if (given(o_r)) c.r = r;
        if (given(o_theta)) c.theta = theta;
        if (given(o_ordering)) c.ordering = ordering;
        if (given(o_tau_max)) c.tau_max = tau_max;
        if (given(o_tau_steps)) c.tau_steps = tau_steps;
        if (given(o_m)) c.m = m;
        if (given(o_tau)) c.tau = tau;
        if (given(o_k)) c.grid_k = grid_k;
        if (given(o_points)) c.grid_points = grid_points;
        if (given(o_n)) c.expand_n = expand_n;
        if (given(o_ode)) c.ode_tol = ode_tol;
        if (given(o_quad)) c.quad_tol = quad_tol;
        if (given(o_series)) c.series_tol = series_tol;
        if (given(o_output)) {
            if (output == "csv") c.output = dosq::OutputFormat::csv;
            else if (output == "json") c.output = dosq::OutputFormat::json;
            else throw dosq::ConfigError("--output must be csv or json");
        }
        if (given(o_seed)) c.seed = seed;
        dosq::validate(c);
        return c;
    }

    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw dosq::ConfigError("cannot write " + out_path);
        f << text;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squeezed states of time-dependent quadratic potentials"};
    app.require_subcommand(1);

    std::array<Flags, 5> per_command;
    auto* traj = app.add_subcommand("trajectory", "means, uncertainties and their product along tau");
    auto* wave = app.add_subcommand("wavefunction", "Psi on an x grid centred at <x>");
    auto* expd = app.add_subcommand("expand", "number-basis coefficients of the squeezed state");
    auto* ver = app.add_subcommand("verify", "run the residual and invariant battery");
    auto* dump = app.add_subcommand("config", "print the effective configuration as JSON");
    const std::array<CLI::App*, 5> commands{traj, wave, expd, ver, dump};
    for (std::size_t i = 0; i < commands.size(); ++i) per_command[i].attach(commands[i]);

    std::vector<std::string> suites;
    bool corrupt = false;
    std::string report_csv;
    int samples = 1000;
    ver->add_option("--suite", suites, "suite to run (repeatable); default all");
    ver->add_flag("--corrupt-g2-sign", corrupt, "negative control: flip the g2 sign in the harmonic phi3 identity");
    ver->add_option("--report-csv", report_csv, "also write the check table as CSV");
    ver->add_option("--samples", samples, "random samples in the observables sweep")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    const Flags* chosen = &per_command[0];
    for (std::size_t i = 0; i < commands.size(); ++i)
        if (*commands[i]) chosen = &per_command[i];
    const Flags& flags = *chosen;

    try {
        dosq::RunConfig c = flags.build();
        if (*traj) flags.emit(dosq::run_trajectory(c));
        if (*wave) flags.emit(dosq::run_wavefunction(c));
        if (*expd) flags.emit(dosq::run_expand(c));
        if (*dump) flags.emit(dosq::config_to_json(c));
        if (*ver) {
            dosq::VerifyOptions opt;
            opt.suites = suites;
            opt.corrupt_g2_sign = corrupt;
            opt.sweep_samples = samples;
            auto report = dosq::run_verify(c, opt);
            flags.emit(report.to_text());
            if (!report_csv.empty()) {
                std::ofstream f(report_csv, std::ios::binary);
                f << report.to_csv();
            }
            return report.passed() ? ok : check_failure;
        }
        return ok;
    } catch (const dosq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const dosq::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const dosq::RangeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const dosq::CapacityError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return numeric_error;
    }
}
