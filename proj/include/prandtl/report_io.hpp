#ifndef PRANDTL_REPORT_IO_HPP
#define PRANDTL_REPORT_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "prandtl/config.hpp"
#include "prandtl/solver.hpp"
#include "prandtl/verification.hpp"

namespace prandtl {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_convergence_failure = 3,
    exit_verification_failure = 4,
    exit_io_error = 5,
};

namespace detail {

/// 17 significant digits: round-trip exact for binary64.
inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void require_stream(const std::ofstream& os, const std::string& path) {
    if (!os) throw std::ios_base::failure("cannot write " + path);
}

} // namespace detail

inline void write_solution_csv(const std::string& path, const GridFunction& u,
                               const GridFunction& du_weighted) {
    std::ofstream os(path);
    detail::require_stream(os, path);
    os << "j,omega,x,u_real,u_imag,u_prime_weighted\n";
    const auto& g = *u.grid();
    for (std::size_t j = 0; j < u.size(); ++j) {
        os << j << ',' << detail::num17(g.omega(j)) << ',' << detail::num17(g.x(j)) << ','
           << detail::num17(u[j].real()) << ',' << detail::num17(u[j].imag()) << ','
           << detail::num17(du_weighted[j].real()) << '\n';
    }
    detail::require_stream(os, path);
}

inline void write_spectrum_csv(const std::string& path, const SpectralFunction& U,
                               const MultiplierTable& mtab) {
    std::ofstream os(path);
    detail::require_stream(os, path);
    os << "k,xi,U_real,U_imag,multiplier\n";
    const auto& g = *U.grid();
    for (std::size_t k = 0; k < U.size(); ++k) {
        os << k << ',' << detail::num17(g.xi(k)) << ',' << detail::num17(U[k].real()) << ','
           << detail::num17(U[k].imag()) << ',' << detail::num17(mtab[k]) << '\n';
    }
    detail::require_stream(os, path);
}

inline void write_report_txt(const std::string& path, const SolveReport& rep,
                             const GridConfig& grid) {
    std::ofstream os(path);
    detail::require_stream(os, path);
    os << "grid                n = " << grid.n << "   L = " << grid.half_width << "\n";
    os << "iterations          " << rep.iterations << "\n";
    os << "residual            " << detail::num17(rep.residual) << "\n";
    os << "spectral tail       " << detail::num17(rep.spectral_tail)
       << (rep.tail_warning ? "   WARNING: above 1e-4" : "") << "\n\n";
    os << "norms\n";
    os << "  ||u|| (s=0)       " << detail::num17(rep.norms.l2_tilde) << "\n";
    os << "  ||u|| (s=1/2)     " << detail::num17(rep.norms.h_half) << "\n";
    os << "  ||u|| (s=1)       " << detail::num17(rep.norms.h_one) << "\n";
    os << "  ||f|| (L2,r)      " << detail::num17(rep.norms.rhs_l2r) << "\n\n";
    os << "bounds\n";
    os << "  " << std::left << std::setw(26) << "name" << std::setw(26) << "lhs" << std::setw(26)
       << "rhs" << "status\n";
    for (const auto& b : rep.bounds) {
        os << "  " << std::left << std::setw(26) << b.name << std::setw(26) << detail::num17(b.lhs)
           << std::setw(26) << detail::num17(b.rhs) << (b.pass ? "pass" : "FAIL") << "\n";
    }
    detail::require_stream(os, path);
}

inline void write_report_json(const std::string& path, const SolveReport& rep,
                              const GridConfig& grid) {
    nlohmann::json j;
    j["norms"] = {{"l2_tilde", rep.norms.l2_tilde},
                  {"h_half", rep.norms.h_half},
                  {"h_one", rep.norms.h_one},
                  {"rhs_l2r", rep.norms.rhs_l2r}};
    j["bounds"] = nlohmann::json::array();
    for (const auto& b : rep.bounds)
        j["bounds"].push_back({{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"pass", b.pass}});
    j["iterations"] = rep.iterations;
    j["residual"] = rep.residual;
    j["spectral_tail"] = rep.spectral_tail;
    j["grid"] = {{"n", grid.n}, {"L", grid.half_width}};
    std::ofstream os(path);
    detail::require_stream(os, path);
    os << j.dump(2) << "\n";
    detail::require_stream(os, path);
}

namespace detail {

inline int run_solve(const RunConfig& cfg, std::ostream& log) {
    auto grid = make_omega_grid(cfg.grid.n, cfg.grid.half_width);
    ProblemSpec spec(cfg.coefficient_spec(), grid, cfg.rhs_callable(), cfg.solver.tol,
                     cfg.solver.max_iter);
    GridFunction u(grid, std::vector<std::complex<double>>(grid->size()));
    SolveReport rep;
    try {
        auto solved = solve_weak(spec);
        u = std::move(solved.first);
        rep = std::move(solved.second);
    } catch (const ConvergenceError& e) {
        log << "error: " << e.what() << "\n";
        return exit_convergence_failure;
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.output, ec);
    if (ec) {
        log << "error: cannot create output directory " << cfg.output << "\n";
        return exit_io_error;
    }
    try {
        auto dual = make_dual_grid(grid);
        const SpectralFunction U = forward(u, dual);
        const GridFunction du = inverse(derivative_image(U));
        const MultiplierTable mtab(dual);
        const std::filesystem::path out(cfg.output);
        write_solution_csv((out / "solution.csv").string(), u, du);
        write_spectrum_csv((out / "spectrum.csv").string(), U, mtab);
        write_report_txt((out / "report.txt").string(), rep, cfg.grid);
        write_report_json((out / "report.json").string(), rep, cfg.grid);
    } catch (const std::ios_base::failure& e) {
        log << "error: " << e.what() << "\n";
        return exit_io_error;
    }
    log << "solved: " << rep.iterations << " iterations, residual " << rep.residual << "\n";
    for (const auto& b : rep.bounds)
        if (!b.pass) log << "note: bound " << b.name << " failed\n";
    return exit_ok;
}

inline int run_transform(const RunConfig& cfg, std::ostream& log) {
    auto grid = make_omega_grid(cfg.grid.n, cfg.grid.half_width);
    GridFunction u = [&] {
        if (cfg.function == "sech")
            return sample_omega(
                [](double w) { return std::complex<double>(1.0 / std::cosh(w), 0.0); }, grid);
        if (cfg.function == "sech2")
            return sample_omega(
                [](double w) {
                    const double s = 1.0 / std::cosh(w);
                    return std::complex<double>(s * s, 0.0);
                },
                grid);
        return sample_omega([](double w) { return std::complex<double>(std::exp(-w * w), 0.0); },
                            grid);
    }();
    const SpectralFunction U = forward(u);
    const GridFunction back = inverse(U);
    double roundtrip = 0.0, imag_leak = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        roundtrip = std::max(roundtrip, std::abs(back[j] - u[j]));
        imag_leak = std::max(imag_leak, std::abs(back[j].imag()));
    }
    const double pi = 3.14159265358979323846;
    std::complex<double> spat = pairing(u, u);
    std::complex<double> spec{0.0, 0.0};
    for (std::size_t k = 0; k < U.size(); ++k) spec += U[k] * std::conj(U[k]);
    spec *= U.grid()->step() / pi;

    log << "function            " << cfg.function << "\n";
    log << "grid                n = " << cfg.grid.n << "   L = " << cfg.grid.half_width << "\n";
    log << "roundtrip max err   " << roundtrip << "\n";
    log << "imag leakage        " << imag_leak << "\n";
    log << "parseval mismatch   " << std::abs(spat - spec) << "\n";
    log << "norm s=0            " << hs_norm(U, 0.0) << "\n";
    log << "norm s=1/2          " << hs_norm(U, 0.5) << "\n";
    log << "norm s=1            " << hs_norm(U, 1.0) << "\n";

    if (!cfg.output.empty() && cfg.output != "-") {
        std::error_code ec;
        std::filesystem::create_directories(cfg.output, ec);
        if (ec) {
            log << "error: cannot create output directory " << cfg.output << "\n";
            return exit_io_error;
        }
        const std::string path = (std::filesystem::path(cfg.output) / "transform.csv").string();
        try {
            std::ofstream os(path);
            require_stream(os, path);
            os << "j,omega,x,u_real,u_imag,roundtrip_err\n";
            for (std::size_t j = 0; j < u.size(); ++j)
                os << j << ',' << num17(grid->omega(j)) << ',' << num17(grid->x(j)) << ','
                   << num17(u[j].real()) << ',' << num17(u[j].imag()) << ','
                   << num17(std::abs(back[j] - u[j])) << '\n';
            require_stream(os, path);
        } catch (const std::ios_base::failure& e) {
            log << "error: " << e.what() << "\n";
            return exit_io_error;
        }
    }
    return exit_ok;
}

inline int run_verify(bool quick, std::ostream& log) {
    const auto results = run_acceptance_suite(quick);
    print_results(log, results);
    const int fails = count_failures(results);
    if (fails > 0) {
        log << fails << " check(s) failed\n";
        return exit_verification_failure;
    }
    return exit_ok;
}

} // namespace detail

/// Executes a parsed configuration; returns the process exit code.
inline int run(const RunConfig& cfg, std::ostream& log = std::cout, bool quick = false) {
    try {
        switch (cfg.command) {
            case Command::solve:
                return detail::run_solve(cfg, log);
            case Command::transform:
                return detail::run_transform(cfg, log);
            case Command::verify:
                return detail::run_verify(quick, log);
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::ios_base::failure& e) {
        log << "error: " << e.what() << "\n";
        return exit_io_error;
    }
    return exit_config_error;
}

} // namespace prandtl

#endif
