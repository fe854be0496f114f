#ifndef PRANDTL_CONFIG_HPP
#define PRANDTL_CONFIG_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prandtl/fft.hpp"
#include "prandtl/solver.hpp"

namespace prandtl {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { solve, transform, verify };

struct GridConfig {
    std::size_t n = 4096;
    double half_width = 12.0;
};

struct SolverConfig {
    double tol = 1e-10;
    std::size_t max_iter = 5000;
};

struct CoefficientConfig {
    std::string kind = "constant";
    double p0 = 1.0;
    std::optional<double> bound;  // M; auto-derived for presets when absent
    std::vector<std::pair<double, double>> samples;
};

struct RhsConfig {
    std::string kind = "one";  // one | cosine | tabulated
    std::vector<std::pair<double, double>> samples;
};

struct RunConfig {
    Command command = Command::solve;
    CoefficientConfig coefficient;
    RhsConfig rhs;
    GridConfig grid;
    SolverConfig solver;
    std::string output = "out";
    std::string function = "sech";  // test function for the transform command

    CoefficientSpec coefficient_spec() const {
        if (coefficient.kind == "tabulated") {
            if (!coefficient.bound)
                throw ConfigError("coefficient.M: required for tabulated coefficients");
            return CoefficientSpec::tabulated(coefficient.samples, *coefficient.bound);
        }
        CoefficientSpec c = coefficient.kind == "elliptic"   ? CoefficientSpec::elliptic(coefficient.p0)
                            : coefficient.kind == "constant" ? CoefficientSpec::constant(coefficient.p0)
                                                             : CoefficientSpec::triangular(coefficient.p0);
        if (coefficient.bound) {
            if (!(*coefficient.bound >= c.bound()))
                throw ConfigError("coefficient.M: must be >= the preset bound " +
                                  std::to_string(c.bound()));
            return c.with_bound(*coefficient.bound);
        }
        return c;
    }

    /// Effective bound M (auto-set for presets when not given explicitly).
    double resolved_bound() const { return coefficient_spec().bound(); }

    std::function<double(double)> rhs_callable() const {
        if (rhs.kind == "one") return [](double) { return 1.0; };
        if (rhs.kind == "cosine")
            return [](double x) { return std::cos(1.5707963267948966 * x); };
        // tabulated: linear interpolation in omega, clamped outside the table
        std::vector<double> om, val;
        for (const auto& [x, f] : rhs.samples) {
            om.push_back(std::atanh(x));
            val.push_back(f);
        }
        return [om = std::move(om), val = std::move(val)](double x) {
            const double w = std::atanh(x);
            if (w <= om.front()) return val.front();
            if (w >= om.back()) return val.back();
            const auto it = std::upper_bound(om.begin(), om.end(), w);
            const std::size_t i = static_cast<std::size_t>(it - om.begin());
            const double t = (w - om[i - 1]) / (om[i] - om[i - 1]);
            return (1.0 - t) * val[i - 1] + t * val[i];
        };
    }
};

namespace detail {

inline std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline void reject_unknown(const nlohmann::json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("unknown key \"" + where + key + "\"");
    }
}

inline std::vector<std::pair<double, double>> parse_samples(const nlohmann::json& arr,
                                                            const std::string& where) {
    if (!arr.is_array()) throw ConfigError(where + ": must be an array of [x, value] pairs");
    std::vector<std::pair<double, double>> out;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ConfigError(where + ": each entry must be a numeric pair [x, value]");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

} // namespace detail

/**
 * Parses and fully validates a JSON run configuration.  Unknown keys are
 * rejected; omitted sections get the documented defaults (n = 4096,
 * L = 12, tol = 1e-10, max_iter = 5000).
 */
inline RunConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    detail::reject_unknown(doc, "",
                           {"command", "coefficient", "rhs", "grid", "solver", "output", "function"});

    RunConfig cfg;
    if (doc.contains("command")) {
        const std::string c = doc["command"].get<std::string>();
        if (c == "solve")
            cfg.command = Command::solve;
        else if (c == "transform")
            cfg.command = Command::transform;
        else if (c == "verify")
            cfg.command = Command::verify;
        else
            throw ConfigError("command: must be one of solve, transform, verify");
    }

    if (doc.contains("coefficient")) {
        const auto& c = doc["coefficient"];
        if (!c.is_object()) throw ConfigError("coefficient: must be an object");
        detail::reject_unknown(c, "coefficient.", {"kind", "p0", "M", "samples"});
        if (c.contains("kind")) cfg.coefficient.kind = c["kind"].get<std::string>();
        if (cfg.coefficient.kind != "elliptic" && cfg.coefficient.kind != "constant" &&
            cfg.coefficient.kind != "triangular" && cfg.coefficient.kind != "tabulated")
            throw ConfigError("coefficient.kind: must be elliptic, constant, triangular or tabulated");
        if (c.contains("p0")) {
            cfg.coefficient.p0 = c["p0"].get<double>();
            if (!(cfg.coefficient.p0 > 0.0)) throw ConfigError("coefficient.p0: must be > 0");
        }
        if (c.contains("M")) {
            cfg.coefficient.bound = c["M"].get<double>();
            if (!(*cfg.coefficient.bound > 0.0)) throw ConfigError("coefficient.M: must be > 0");
        }
        if (c.contains("samples"))
            cfg.coefficient.samples = detail::parse_samples(c["samples"], "coefficient.samples");
        if (cfg.coefficient.kind == "tabulated" && cfg.coefficient.samples.size() < 2)
            throw ConfigError("coefficient.samples: tabulated coefficient needs >= 2 samples");
    }

    if (doc.contains("rhs")) {
        const auto& r = doc["rhs"];
        if (!r.is_object()) throw ConfigError("rhs: must be an object");
        detail::reject_unknown(r, "rhs.", {"kind", "samples"});
        if (r.contains("kind")) cfg.rhs.kind = r["kind"].get<std::string>();
        if (cfg.rhs.kind != "one" && cfg.rhs.kind != "cosine" && cfg.rhs.kind != "tabulated")
            throw ConfigError("rhs.kind: must be one, cosine or tabulated");
        if (r.contains("samples")) cfg.rhs.samples = detail::parse_samples(r["samples"], "rhs.samples");
        if (cfg.rhs.kind == "tabulated" && cfg.rhs.samples.size() < 2)
            throw ConfigError("rhs.samples: tabulated right-hand side needs >= 2 samples");
    }

    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        if (!g.is_object()) throw ConfigError("grid: must be an object");
        detail::reject_unknown(g, "grid.", {"n", "L"});
        if (g.contains("n")) {
            if (!g["n"].is_number_unsigned()) throw ConfigError("grid.n: must be a positive integer");
            cfg.grid.n = g["n"].get<std::size_t>();
        }
        if (!detail::is_power_of_two(cfg.grid.n))
            throw ConfigError("grid.n: n must be a power of two");
        if (cfg.grid.n < 256 || cfg.grid.n > (std::size_t{1} << 20))
            throw ConfigError("grid.n: must lie within [256, 1048576]");
        if (g.contains("L")) cfg.grid.half_width = g["L"].get<double>();
        if (!(cfg.grid.half_width >= 4.0 && cfg.grid.half_width <= 40.0))
            throw ConfigError("grid.L: must lie within [4, 40]");
    }

    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        if (!s.is_object()) throw ConfigError("solver: must be an object");
        detail::reject_unknown(s, "solver.", {"tol", "max_iter"});
        if (s.contains("tol")) cfg.solver.tol = s["tol"].get<double>();
        if (!(cfg.solver.tol >= 1e-14 && cfg.solver.tol <= 1e-4))
            throw ConfigError("solver.tol: must lie within [1e-14, 1e-4]");
        if (s.contains("max_iter")) {
            if (!s["max_iter"].is_number_unsigned())
                throw ConfigError("solver.max_iter: must be a positive integer");
            cfg.solver.max_iter = s["max_iter"].get<std::size_t>();
        }
        if (cfg.solver.max_iter < 1 || cfg.solver.max_iter > 10000000)
            throw ConfigError("solver.max_iter: must lie within [1, 1e7]");
    }

    if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
    if (doc.contains("function")) {
        cfg.function = doc["function"].get<std::string>();
        if (cfg.function != "sech" && cfg.function != "sech2" && cfg.function != "gauss")
            throw ConfigError("function: must be sech, sech2 or gauss");
    }
    return cfg;
}

} // namespace prandtl

#endif
