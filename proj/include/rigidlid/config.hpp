#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "diagnostics.hpp"
#include "io.hpp"
#include "params.hpp"

namespace rigidlid {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scenario { well_prepared, ill_prepared };

inline const char* to_string(Scenario s) {
    return s == Scenario::well_prepared ? "well_prepared" : "ill_prepared";
}

/// Gaussian profile amp*exp(-(x/width)^2); amp = 0 gives the zero field.
struct GaussianSpec {
    double amp = 0.0;
    double width = 2.0;
};

/// Full experiment description.  Defaults reproduce the reference protocol:
/// domain [-100,100) with n = 2000 (dx = 0.1), delta = epsilon = 1/2,
/// alpha = rho, Gaussian interface data, T = 4, tolerances 1e-8, nine gamma
/// values approaching 1.
struct ExperimentConfig {
    double x_min = -100.0, x_max = 100.0;
    std::size_t n = 2000;

    double delta = 0.5;
    double epsilon = 0.5;
    double alpha = -1.0;  ///< < 0 means "alpha = rho" per gamma
    std::vector<double> gamma_list{0.75, 0.9, 0.93, 0.95, 0.965, 0.975, 0.9825, 0.9875, 0.99};

    GaussianSpec zeta2{1.0, 2.0};
    GaussianSpec us{-1.0 / 3.0, 2.0};
    GaussianSpec zeta1{0.0, 2.0};
    GaussianSpec m{0.0, 2.0};  ///< amp overridden by scenario unless set explicitly
    bool m_amp_explicit = false;

    Scenario scenario = Scenario::well_prepared;
    ApproximantKind kind = ApproximantKind::rl_only;
    bool allow_kind_mismatch = false;

    double t_end = 4.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-8;
    std::size_t samples = 9;  ///< conservation sampling points over [0, T]

    bool dealias = false;
    double h0 = 1e-6;             ///< hyperbolicity margin threshold
    bool abort_on_margin = false; ///< abort (vs warn) when the margin drops below h0
    ErrorNorm normalization = ErrorNorm::by_initial;

    double delta_min = 0.1, delta_max = 10.0, gamma_min = 0.0;

    /// m amplitude after applying the scenario default (0 well-prepared,
    /// 2 ill-prepared).
    double m_amp() const {
        if (m_amp_explicit) return m.amp;
        return scenario == Scenario::ill_prepared ? 2.0 : 0.0;
    }

    Params params_for(double gamma) const {
        Params p{gamma, delta, epsilon, 0.0};
        p.alpha = alpha < 0.0 ? p.rho() : alpha;
        return p;
    }

    void check() const {
        if (gamma_list.empty()) throw ConfigError("gamma_list is empty");
        if (!(delta > 0.0)) throw ConfigError("delta must be positive");
        for (std::size_t i = 0; i + 1 < gamma_list.size(); ++i)
            if (!(gamma_list[i] < gamma_list[i + 1]))
                throw ConfigError("gamma_list must be strictly increasing");
        for (double g : gamma_list) {
            if (!(g > 0.0 && g < 1.0))
                throw ConfigError("gamma_list entries must lie in (0,1)");
            ParamVerdict v = validate(params_for(g), delta_min, delta_max, gamma_min);
            if (!v.ok) {
                std::string msg = "invalid parameters at gamma=" + std::to_string(g) + ":";
                for (const auto& s : v.violations) msg += " " + s;
                throw ConfigError(msg);
            }
        }
        if (alpha == 0.0)
            throw ConfigError("params.alpha must be positive (the surface equation is "
                              "degenerate at alpha = 0); use 'rho' or a value in (0,1]");
        if (!(t_end > 0.0)) throw ConfigError("T must be positive");
        if (!(rel_tol > 0.0 && abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
        if (samples < 2) throw ConfigError("samples must be >= 2");
        const bool ip_kind =
            kind == ApproximantKind::ip_basic || kind == ApproximantKind::ip_improved;
        if (ip_kind && scenario != Scenario::ill_prepared && !allow_kind_mismatch)
            throw ConfigError("ill-prepared approximant kinds require scenario=ill_prepared "
                              "(or allow_kind_mismatch=true)");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + v + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("key '" + key + "': cannot parse boolean '" + v + "'");
}

}  // namespace detail

/// Apply one "key = value" assignment.  Unknown keys are rejected.
inline void apply_config_entry(ExperimentConfig& c, const std::string& key,
                               const std::string& value) {
    using detail::parse_bool;
    using detail::parse_double;
    if (key == "grid.x_min") c.x_min = parse_double(key, value);
    else if (key == "grid.x_max") c.x_max = parse_double(key, value);
    else if (key == "grid.n") {
        const double v = parse_double(key, value);
        if (!(v >= 4.0) || v != std::floor(v)) throw ConfigError("grid.n must be an integer >= 4");
        c.n = static_cast<std::size_t>(v);
    } else if (key == "params.delta") c.delta = parse_double(key, value);
    else if (key == "params.epsilon") c.epsilon = parse_double(key, value);
    else if (key == "params.alpha") {
        if (value == "rho") c.alpha = -1.0;
        else c.alpha = parse_double(key, value);
    } else if (key == "gamma_list") {
        c.gamma_list.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = detail::trim(tok);
            if (!tok.empty()) c.gamma_list.push_back(parse_double(key, tok));
        }
        if (c.gamma_list.empty()) throw ConfigError("gamma_list: no values given");
    } else if (key == "init.zeta2_amp") c.zeta2.amp = parse_double(key, value);
    else if (key == "init.zeta2_width") c.zeta2.width = parse_double(key, value);
    else if (key == "init.us_amp") c.us.amp = parse_double(key, value);
    else if (key == "init.us_width") c.us.width = parse_double(key, value);
    else if (key == "init.zeta1_amp") c.zeta1.amp = parse_double(key, value);
    else if (key == "init.zeta1_width") c.zeta1.width = parse_double(key, value);
    else if (key == "init.m_amp") {
        c.m.amp = parse_double(key, value);
        c.m_amp_explicit = true;
    } else if (key == "init.m_width") c.m.width = parse_double(key, value);
    else if (key == "scenario") {
        if (value == "well_prepared") c.scenario = Scenario::well_prepared;
        else if (value == "ill_prepared") c.scenario = Scenario::ill_prepared;
        else throw ConfigError("scenario must be well_prepared or ill_prepared");
    } else if (key == "kind") {
        if (value == "rl_only") c.kind = ApproximantKind::rl_only;
        else if (value == "improved_wp") c.kind = ApproximantKind::improved_wp;
        else if (value == "ip_basic") c.kind = ApproximantKind::ip_basic;
        else if (value == "ip_improved") c.kind = ApproximantKind::ip_improved;
        else throw ConfigError("kind must be rl_only|improved_wp|ip_basic|ip_improved");
    } else if (key == "allow_kind_mismatch") c.allow_kind_mismatch = parse_bool(key, value);
    else if (key == "T") c.t_end = parse_double(key, value);
    else if (key == "rel_tol") c.rel_tol = parse_double(key, value);
    else if (key == "abs_tol") c.abs_tol = parse_double(key, value);
    else if (key == "samples") {
        const double v = parse_double(key, value);
        if (!(v >= 2.0) || v != std::floor(v)) throw ConfigError("samples must be an integer >= 2");
        c.samples = static_cast<std::size_t>(v);
    } else if (key == "dealias") c.dealias = parse_bool(key, value);
    else if (key == "h0") c.h0 = parse_double(key, value);
    else if (key == "abort_on_margin") c.abort_on_margin = parse_bool(key, value);
    else if (key == "normalization") {
        if (value == "by_initial") c.normalization = ErrorNorm::by_initial;
        else if (value == "by_current") c.normalization = ErrorNorm::by_current;
        else if (value == "rms") c.normalization = ErrorNorm::rms;
        else throw ConfigError("normalization must be by_initial|by_current|rms");
    } else if (key == "delta_min") c.delta_min = parse_double(key, value);
    else if (key == "delta_max") c.delta_max = parse_double(key, value);
    else if (key == "gamma_min") c.gamma_min = parse_double(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

/// Parse "key = value" lines; '#' starts a comment, blank lines are skipped.
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        apply_config_entry(c, detail::trim(line.substr(0, eq)),
                           detail::trim(line.substr(eq + 1)));
    }
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

/// Resolved configuration as "key = value" pairs, used as the header of
/// every emitted artifact.
inline std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("grid.x_min", format_double(c.x_min));
    e.emplace_back("grid.x_max", format_double(c.x_max));
    e.emplace_back("grid.n", std::to_string(c.n));
    e.emplace_back("params.delta", format_double(c.delta));
    e.emplace_back("params.epsilon", format_double(c.epsilon));
    e.emplace_back("params.alpha", c.alpha < 0.0 ? "rho" : format_double(c.alpha));
    {
        std::string gl;
        for (std::size_t i = 0; i < c.gamma_list.size(); ++i)
            gl += (i ? "," : "") + format_double(c.gamma_list[i]);
        e.emplace_back("gamma_list", gl);
    }
    e.emplace_back("init.zeta2_amp", format_double(c.zeta2.amp));
    e.emplace_back("init.zeta2_width", format_double(c.zeta2.width));
    e.emplace_back("init.us_amp", format_double(c.us.amp));
    e.emplace_back("init.us_width", format_double(c.us.width));
    e.emplace_back("init.zeta1_amp", format_double(c.zeta1.amp));
    e.emplace_back("init.zeta1_width", format_double(c.zeta1.width));
    e.emplace_back("init.m_amp", format_double(c.m_amp()));
    e.emplace_back("init.m_width", format_double(c.m.width));
    e.emplace_back("scenario", to_string(c.scenario));
    e.emplace_back("kind", to_string(c.kind));
    e.emplace_back("T", format_double(c.t_end));
    e.emplace_back("rel_tol", format_double(c.rel_tol));
    e.emplace_back("abs_tol", format_double(c.abs_tol));
    e.emplace_back("samples", std::to_string(c.samples));
    e.emplace_back("dealias", c.dealias ? "true" : "false");
    e.emplace_back("h0", format_double(c.h0));
    e.emplace_back("abort_on_margin", c.abort_on_margin ? "true" : "false");
    e.emplace_back("normalization", c.normalization == ErrorNorm::by_initial ? "by_initial"
                                    : c.normalization == ErrorNorm::by_current ? "by_current"
                                                                               : "rms");
    return e;
}

}  // namespace rigidlid
