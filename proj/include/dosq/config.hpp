#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dosq/classical.hpp"
#include "dosq/potential.hpp"
#include "dosq/squeeze.hpp"

namespace dosq {

struct PiecewiseTable {
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> pieces;
    bool operator==(const PiecewiseTable&) const = default;
};

struct PotentialConfig {
    std::string preset = "harmonic";
    double omega = 1.0;
    double force = 0.0;
    double c_zero_re = 0.0, c_zero_im = 0.0;
    // Required for preset "custom"; a missing table means the zero function.
    std::optional<PiecewiseTable> g2, g1, g0;
    // (chi1, chi1', chi2, chi2') at tau = 0; the preset default when absent.
    std::optional<std::array<double, 4>> initial_data;
    bool operator==(const PotentialConfig&) const = default;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    PotentialConfig potential;
    double x0 = 0.0, p0 = 0.0;
    std::optional<std::complex<double>> alpha;  // overrides (x0, p0) when set
    double r = 0.0, theta = 0.0;
    std::string ordering = "alpha_z";
    double tau_max = 10.0;
    int tau_steps = 101;
    // Wavefunction output: number state m, or the (alpha, z) state when m is absent.
    std::optional<int> m;
    double tau = 0.0;
    double grid_k = 6.0;  // half-width in units of delta_x
    int grid_points = 801;
    int expand_n = 0;     // 0 picks N adaptively
    double ode_tol = 1e-10, quad_tol = 1e-12, series_tol = 1e-8;
    OutputFormat output = OutputFormat::csv;
    std::uint64_t seed = 20240607;
    bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

PotentialSpec make_spec(const PotentialConfig& config);
InitialData make_initial_data(const PotentialConfig& config, const PotentialSpec& spec);
SqueezeParam make_squeeze(const RunConfig& config);

}  // namespace dosq
