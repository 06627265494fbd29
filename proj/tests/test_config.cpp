#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "dosq/errors.hpp"
#include "dosq/run.hpp"

using namespace dosq;

namespace {

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("config JSON round trip") {
    RunConfig c;
    c.potential.preset = "custom";
    c.potential.g2 = PiecewiseTable{{0.0, 2.0}, {{0.5}}};
    c.potential.initial_data = std::array<double, 4>{2.0, 0.0, 0.0, 0.5};
    c.alpha = cplx(0.3, -0.1);
    c.r = 0.2;
    c.m = 3;
    c.output = OutputFormat::json;
    auto back = config_from_json(config_to_json(c));
    CHECK(back == c);
    CHECK(config_from_json("{}") == RunConfig{});
}

TEST_CASE("config errors name the field") {
    auto message = [](const std::string& text) {
        try {
            validate(config_from_json(text));
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"bogus": 1})").find("bogus") != std::string::npos);
    CHECK(message(R"({"tau_max": "ten"})").find("tau_max") != std::string::npos);
    CHECK(message(R"({"grid": {"k": 2}})").find("k") != std::string::npos);
    CHECK(message(R"({"potential": {"preset": "custom"}})").find("custom") != std::string::npos);
    CHECK(message(R"({"z": {"r": -1}})").find("r") != std::string::npos);
    CHECK(message(R"({"tau_steps": 0})").find("tau_steps") != std::string::npos);
    CHECK(message(R"({"x0": 1.0})").empty());
}

TEST_CASE("trajectory runs are deterministic") {
    RunConfig c;
    c.tau_max = 5;
    c.tau_steps = 11;
    c.x0 = 1.0;
    auto a = run_trajectory(c), b = run_trajectory(c);
    CHECK(a == b);
    CHECK(count_lines(a) == 12);
    std::istringstream in(a);
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "tau,mean_x,mean_p,delta_x,delta_p,product");
    while (std::getline(in, row)) CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(0.5));
}

TEST_CASE("wavefunction output") {
    RunConfig c;
    c.m = 0;
    c.tau = 1.0;
    c.grid_points = 401;
    std::istringstream in(run_wavefunction(c));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,re,im,abs2");
    double peak_x = 0, peak = 0, sum = 0, prev_x = 0;
    bool first = true;
    double dx = 0;
    while (std::getline(in, line)) {
        double x, re, im, a2;
        char comma;
        std::istringstream row(line);
        row >> x >> comma >> re >> comma >> im >> comma >> a2;
        if (!first) dx = x - prev_x;
        first = false;
        prev_x = x;
        sum += a2;
        if (a2 > peak) peak = a2, peak_x = x;
    }
    CHECK(sum * dx == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::fabs(peak_x) < dx);

    RunConfig coh;
    coh.alpha = cplx(1.0, 0.0);
    coh.series_tol = 1e-12;
    std::istringstream cin(run_wavefunction(coh));
    std::getline(cin, line);
    peak = 0;
    while (std::getline(cin, line)) {
        double x, re, im, a2;
        char comma;
        std::istringstream row(line);
        row >> x >> comma >> re >> comma >> im >> comma >> a2;
        if (a2 > peak) peak = a2, peak_x = x;
    }
    CHECK(peak_x == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("verify suites and tolerance tiers") {
    RunConfig c;
    VerifyOptions o;
    o.suites = {"wronskian"};
    auto r = run_verify(c, o);
    CHECK(r.passed());
    for (const auto& ch : r.checks) CHECK(ch.suite == "wronskian");

    ::setenv("DOSQ_TOLERANCE_TIER", "strict", 1);
    CHECK(tier_scale(tolerance_tier_from_env()) == 0.1);
    ::setenv("DOSQ_TOLERANCE_TIER", "relaxed", 1);
    CHECK(tier_scale(tolerance_tier_from_env()) == 10.0);
    auto relaxed = run_verify(c, o);
    CHECK(relaxed.checks.front().tolerance == doctest::Approx(10 * r.checks.front().tolerance));
    ::setenv("DOSQ_TOLERANCE_TIER", "loose", 1);
    CHECK_THROWS_AS(tolerance_tier_from_env(), ConfigError);
    ::unsetenv("DOSQ_TOLERANCE_TIER");
    CHECK(tier_scale(tolerance_tier_from_env()) == 1.0);

    o.suites = {"nope"};
    CHECK_THROWS_AS(run_verify(c, o), ConfigError);
}
