#include "dosq/config.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "dosq/errors.hpp"
#include "dosq/states.hpp"

namespace dosq {

using nlohmann::json;

namespace {

// Reads obj[key] into out when present; wraps type errors with the field path.
template <class T>
void read(const json& obj, const char* key, T& out, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + path + key + "' has the wrong type");
    }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& path) {
    if (!obj.is_object()) throw ConfigError("'" + (path.empty() ? std::string("config") : path) + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown field '" + path + it.key() + "'");
    }
}

PiecewiseTable read_table(const json& j, const std::string& path) {
    reject_unknown(j, {"breakpoints", "pieces"}, path + ".");
    PiecewiseTable t;
    read(j, "breakpoints", t.breakpoints, path + ".");
    read(j, "pieces", t.pieces, path + ".");
    return t;
}

json write_table(const PiecewiseTable& t) { return {{"breakpoints", t.breakpoints}, {"pieces", t.pieces}}; }

CoefficientFunction make_coefficient(const std::optional<PiecewiseTable>& t, const char* name) {
    if (!t) return CoefficientFunction::constant(0.0);
    try {
        if (t->breakpoints.empty()) {
            if (t->pieces.size() != 1 || t->pieces[0].size() != 1)
                throw ConfigError("a table without breakpoints must hold one constant piece");
            return CoefficientFunction::constant(t->pieces[0][0]);
        }
        return CoefficientFunction::piecewise(t->breakpoints, t->pieces);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("potential.") + name + ": " + e.what());
    }
}

}  // namespace

void validate(const RunConfig& c) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError(std::string("field '") + name + "' must be positive");
    };
    auto finite = [](double v, const char* name) {
        if (!std::isfinite(v)) throw ConfigError(std::string("field '") + name + "' must be finite");
    };
    preset_from_name(c.potential.preset);
    finite(c.potential.omega, "potential.omega");
    finite(c.potential.force, "potential.force");
    finite(c.potential.c_zero_re, "potential.c_zero_re");
    finite(c.potential.c_zero_im, "potential.c_zero_im");
    finite(c.x0, "x0");
    finite(c.p0, "p0");
    if (c.alpha) {
        finite(c.alpha->real(), "alpha.re");
        finite(c.alpha->imag(), "alpha.im");
    }
    if (!(c.r >= 0) || !std::isfinite(c.r)) throw ConfigError("field 'z.r' must be finite and non-negative");
    finite(c.theta, "z.theta");
    ordering_from_name(c.ordering);
    positive(c.tau_max, "tau_max");
    if (c.tau_steps < 1) throw ConfigError("field 'tau_steps' must be at least 1");
    if (c.m && (*c.m < 0 || *c.m >= number_state_capacity))
        throw ConfigError("field 'm' must lie in [0, " + std::to_string(number_state_capacity) + ")");
    if (!(c.tau >= 0 && c.tau <= c.tau_max)) throw ConfigError("field 'tau' must lie in [0, tau_max]");
    if (!(c.grid_k >= 4) || !std::isfinite(c.grid_k)) throw ConfigError("field 'grid.k' must be at least 4");
    if (c.grid_points < 5) throw ConfigError("field 'grid.points' must be at least 5");
    if (c.expand_n < 0 || c.expand_n > expansion_max_terms)
        throw ConfigError("field 'expand_n' must lie in [0, " + std::to_string(expansion_max_terms) + "]");
    positive(c.ode_tol, "tolerances.ode_tol");
    positive(c.quad_tol, "tolerances.quad_tol");
    positive(c.series_tol, "tolerances.series_tol");
    make_spec(c.potential);
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"potential", "x0", "p0", "alpha", "z", "ordering", "tau_max", "tau_steps", "m", "tau", "grid",
                       "expand_n", "tolerances", "output", "seed"},
                   "");
    RunConfig c;
    if (auto it = j.find("potential"); it != j.end()) {
        const json& p = *it;
        reject_unknown(p, {"preset", "omega", "force", "c_zero_re", "c_zero_im", "g2", "g1", "g0", "initial_data"},
                       "potential.");
        read(p, "preset", c.potential.preset, "potential.");
        read(p, "omega", c.potential.omega, "potential.");
        read(p, "force", c.potential.force, "potential.");
        read(p, "c_zero_re", c.potential.c_zero_re, "potential.");
        read(p, "c_zero_im", c.potential.c_zero_im, "potential.");
        for (auto [key, slot] : {std::pair{"g2", &c.potential.g2}, {"g1", &c.potential.g1}, {"g0", &c.potential.g0}})
            if (auto t = p.find(key); t != p.end() && !t->is_null())
                *slot = read_table(*t, std::string("potential.") + key);
        if (auto d = p.find("initial_data"); d != p.end() && !d->is_null()) {
            std::vector<double> v;
            read(p, "initial_data", v, "potential.");
            if (v.size() != 4) throw ConfigError("field 'potential.initial_data' needs four numbers");
            c.potential.initial_data = std::array<double, 4>{v[0], v[1], v[2], v[3]};
        }
    }
    read(j, "x0", c.x0, "");
    read(j, "p0", c.p0, "");
    if (auto a = j.find("alpha"); a != j.end() && !a->is_null()) {
        reject_unknown(*a, {"re", "im"}, "alpha.");
        double re = 0, im = 0;
        read(*a, "re", re, "alpha.");
        read(*a, "im", im, "alpha.");
        c.alpha = std::complex<double>(re, im);
    }
    if (auto z = j.find("z"); z != j.end()) {
        reject_unknown(*z, {"r", "theta"}, "z.");
        read(*z, "r", c.r, "z.");
        read(*z, "theta", c.theta, "z.");
    }
    read(j, "ordering", c.ordering, "");
    read(j, "tau_max", c.tau_max, "");
    read(j, "tau_steps", c.tau_steps, "");
    if (auto m = j.find("m"); m != j.end() && !m->is_null()) {
        int v = 0;
        read(j, "m", v, "");
        c.m = v;
    }
    read(j, "tau", c.tau, "");
    if (auto g = j.find("grid"); g != j.end()) {
        reject_unknown(*g, {"k", "points"}, "grid.");
        read(*g, "k", c.grid_k, "grid.");
        read(*g, "points", c.grid_points, "grid.");
    }
    read(j, "expand_n", c.expand_n, "");
    if (auto t = j.find("tolerances"); t != j.end()) {
        reject_unknown(*t, {"ode_tol", "quad_tol", "series_tol"}, "tolerances.");
        read(*t, "ode_tol", c.ode_tol, "tolerances.");
        read(*t, "quad_tol", c.quad_tol, "tolerances.");
        read(*t, "series_tol", c.series_tol, "tolerances.");
    }
    std::string out = "csv";
    read(j, "output", out, "");
    if (out == "csv") c.output = OutputFormat::csv;
    else if (out == "json") c.output = OutputFormat::json;
    else throw ConfigError("field 'output' must be csv or json");
    read(j, "seed", c.seed, "");
    validate(c);
    return c;
}

std::string config_to_json(const RunConfig& c) {
    json p = {{"preset", c.potential.preset},
              {"omega", c.potential.omega},
              {"force", c.potential.force},
              {"c_zero_re", c.potential.c_zero_re},
              {"c_zero_im", c.potential.c_zero_im}};
    if (c.potential.g2) p["g2"] = write_table(*c.potential.g2);
    if (c.potential.g1) p["g1"] = write_table(*c.potential.g1);
    if (c.potential.g0) p["g0"] = write_table(*c.potential.g0);
    if (c.potential.initial_data) p["initial_data"] = *c.potential.initial_data;
    json j = {{"potential", p},
              {"x0", c.x0},
              {"p0", c.p0},
              {"z", {{"r", c.r}, {"theta", c.theta}}},
              {"ordering", c.ordering},
              {"tau_max", c.tau_max},
              {"tau_steps", c.tau_steps},
              {"tau", c.tau},
              {"grid", {{"k", c.grid_k}, {"points", c.grid_points}}},
              {"expand_n", c.expand_n},
              {"tolerances", {{"ode_tol", c.ode_tol}, {"quad_tol", c.quad_tol}, {"series_tol", c.series_tol}}},
              {"output", c.output == OutputFormat::csv ? "csv" : "json"},
              {"seed", c.seed}};
    if (c.alpha) j["alpha"] = {{"re", c.alpha->real()}, {"im", c.alpha->imag()}};
    if (c.m) j["m"] = *c.m;
    return j.dump(2) + "\n";
}

PotentialSpec make_spec(const PotentialConfig& c) {
    const PresetKind kind = preset_from_name(c.preset);
    PotentialSpec spec;
    if (kind == PresetKind::custom) {
        if (!c.g2 && !c.g1 && !c.g0) throw ConfigError("preset 'custom' needs at least one of potential.g2/g1/g0");
        spec = PotentialSpec::custom(make_coefficient(c.g2, "g2"), make_coefficient(c.g1, "g1"),
                                     make_coefficient(c.g0, "g0"));
    } else {
        if (c.g2 || c.g1 || c.g0) throw ConfigError("coefficient tables are only accepted with preset 'custom'");
        spec = PotentialSpec::from_preset(Preset{kind, c.omega, c.force});
    }
    spec.c_zero = {c.c_zero_re, c.c_zero_im};
    return spec;
}

InitialData make_initial_data(const PotentialConfig& c, const PotentialSpec& spec) {
    if (!c.initial_data) return default_initial_data(spec);
    const auto& d = *c.initial_data;
    return InitialData{d[0], d[1], d[2], d[3]};
}

SqueezeParam make_squeeze(const RunConfig& c) { return SqueezeParam::from_polar(c.r, c.theta); }

}  // namespace dosq
