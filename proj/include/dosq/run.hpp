#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dosq/auxiliary.hpp"
#include "dosq/config.hpp"

namespace dosq {

struct Setup {
    PotentialSpec spec;
    ClassicalBasis basis;
    AuxiliaryBundle bundle;
};

Setup build_setup(const RunConfig& config);

std::string run_trajectory(const RunConfig& config);
std::string run_wavefunction(const RunConfig& config);
std::string run_expand(const RunConfig& config);

struct CheckResult {
    std::string suite, name;
    double residual = 0, tolerance = 0;
    bool passed = false;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::string tier;
    std::vector<CheckResult> checks;
    bool passed() const;
    std::string to_text() const;
    std::string to_csv() const;
};

enum class ToleranceTier { strict, standard, relaxed };
// Reads DOSQ_TOLERANCE_TIER (strict | default | relaxed); unset means default.
ToleranceTier tolerance_tier_from_env();
// Multiplier on every verify tolerance: 0.1, 1 or 10.
double tier_scale(ToleranceTier tier);

const std::vector<std::string>& verify_suites();

struct VerifyOptions {
    std::vector<std::string> suites;  // empty runs all of them
    bool corrupt_g2_sign = false;      // negative control on the harmonic fixture
    int random_taus = 20;              // per preset, for the formula suite
    int sweep_samples = 1000;          // Heisenberg and equivalence sweep
};

VerifyReport run_verify(const RunConfig& config, const VerifyOptions& options);

}  // namespace dosq
