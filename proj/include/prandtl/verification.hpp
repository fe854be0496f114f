#ifndef PRANDTL_VERIFICATION_HPP
#define PRANDTL_VERIFICATION_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "prandtl/grid.hpp"
#include "prandtl/operators.hpp"
#include "prandtl/solver.hpp"
#include "prandtl/spaces.hpp"
#include "prandtl/transform.hpp"

namespace prandtl {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

/// pi sech(pi xi), evaluated without overflow.
inline double pi_sech_pi(double xi) {
    const double pi = 3.14159265358979323846;
    const double a = pi * std::abs(xi);
    if (a > 700.0) return 2.0 * pi * std::exp(-a);  // underflow-safe tail
    return pi / std::cosh(a);
}

/// pi xi / sinh(pi xi) with the removable singularity and stable tail.
inline double pi_xi_over_sinh(double xi) {
    const double pi = 3.14159265358979323846;
    const double a = pi * std::abs(xi);
    if (a < 1e-8) return 1.0;
    if (a > 30.0) return 2.0 * a * std::exp(-a);
    return a / std::sinh(a);
}

struct MatrixCase {
    std::string label;
    double M = 0.0;
    GridFunction solution;
    SolveReport report;
};

inline std::vector<MatrixCase> run_preset_matrix(std::size_t n, double L) {
    auto grid = make_omega_grid(n, L);
    const std::vector<std::pair<std::string, CoefficientSpec>> coeffs = {
        {"elliptic(p0=2)", CoefficientSpec::elliptic(2.0)},
        {"constant(p0=1)", CoefficientSpec::constant(1.0)},
        {"triangular(p0=1)", CoefficientSpec::triangular(1.0)},
    };
    const std::vector<std::pair<std::string, std::function<double(double)>>> rhss = {
        {"one", [](double) { return 1.0; }},
        {"cosine", [](double x) { return std::cos(1.5707963267948966 * x); }},
        {"endpoint", [](double x) { return std::pow((1.0 - x) * (1.0 + x), 0.1); }},
    };
    std::vector<MatrixCase> out;
    for (const auto& [cl, coeff] : coeffs)
        for (const auto& [rl, rhs] : rhss) {
            ProblemSpec spec(coeff, grid, rhs, 1e-10, 5000);
            auto [u, rep] = solve_weak(spec);
            out.push_back(MatrixCase{cl + " / " + rl, coeff.bound(), std::move(u), std::move(rep)});
        }
    return out;
}

inline double max_norm(const GridFunction& u) {
    double m = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u[j]));
    return m;
}

} // namespace detail

/**
 * End-to-end verification suite.  Each check exercises one contract of the
 * toolkit at a pinned tolerance and reports the observed margin.  `quick`
 * shrinks the grids and sample counts for a smoke run; tolerances do not
 * change.
 */
inline std::vector<CheckResult> run_acceptance_suite(bool quick = false) {
    const double pi = 3.14159265358979323846;
    std::vector<CheckResult> results;
    const auto add = [&results](std::string name, bool pass, std::string detail) {
        results.push_back(CheckResult{std::move(name), pass, std::move(detail)});
    };

    const std::size_t n_default = quick ? 1024 : 4096;
    const double L_default = 12.0;

    // 1. multiplier identity: the weighted singular operator acts on
    //    sqrt(1-x^2) as multiplication of the spectrum by m(xi); physical
    //    answer (1-x^2)/2, spectral identity m * pi sech = pi xi / sinh.
    {
        auto grid = make_omega_grid(n_default, 20.0);
        auto u = sample_omega(
            [](double w) { return std::complex<double>(1.0 / std::cosh(w), 0.0); }, grid);
        const GridFunction res = apply_prandtl_spectral(u);
        double err = 0.0;
        for (std::size_t j = 0; j < res.size(); ++j)
            err = std::max(err, std::abs(res[j] - std::complex<double>(0.5 * grid->weight(j), 0.0)));

        auto dual = make_dual_grid(make_omega_grid(n_default, L_default));
        double rel = 0.0;
        for (std::size_t k = 0; k < dual->size(); ++k) {
            const double xi = dual->xi(k);
            const double lhs = multiplier(xi) * detail::pi_sech_pi(xi);
            const double rhs = detail::pi_xi_over_sinh(xi);
            rel = std::max(rel, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-280));
        }
        add("multiplier-identity", err <= 1e-8 && rel <= 1e-10,
            "max node error " + detail::fmt(err) + " (tol 1e-8), spectral identity rel " +
                detail::fmt(rel) + " (tol 1e-10)");
    }

    // 2. coth-kernel image: PV quadrature of the 1/y kernel image
    //    reproduces -i pi coth(pi xi).
    {
        double worst = 0.0;
        for (const double xi : {0.5, 1.0, 2.0}) {
            const std::complex<double> got = verify_coth_image(xi);
            const std::complex<double> want{0.0, -pi / std::tanh(pi * xi)};
            worst = std::max(worst, std::abs(got - want));
        }
        add("coth-kernel-image", worst <= 1e-6,
            "max abs error " + detail::fmt(worst) + " at xi in {0.5, 1, 2} (tol 1e-6)");
    }

    // 3. Parseval identity on the sech family + the exact value
    //    <sqrt(1-x^2), sqrt(1-x^2)> = 2.
    {
        auto grid = make_omega_grid(n_default, L_default);
        double worst_rel = 0.0;
        const auto check_pair = [&](const GridFunction& a, const GridFunction& b) {
            const SpectralFunction A = forward(a), B = forward(b);
            std::complex<double> spec{0.0, 0.0};
            for (std::size_t k = 0; k < A.size(); ++k) spec += A[k] * std::conj(B[k]);
            spec *= A.grid()->step() / pi;
            const std::complex<double> spat = pairing(a, b);
            const double scale = hs_norm(A, 0.0) * hs_norm(B, 0.0);
            worst_rel = std::max(worst_rel, std::abs(spat - spec) / scale);
        };
        auto s1 = sample_omega([](double w) { return std::complex<double>(1.0 / std::cosh(w), 0.0); },
                               grid);
        auto s2 = sample_omega(
            [](double w) {
                const double s = 1.0 / std::cosh(w);
                return std::complex<double>(s * s, 0.0);
            },
            grid);
        auto s3 = sample_omega(
            [](double w) { return std::complex<double>(std::tanh(w) / std::cosh(w), 0.0); }, grid);
        check_pair(s1, s1);
        check_pair(s1, s2);
        check_pair(s2, s3);
        const double two_err = std::abs(pairing(s1, s1).real() - 2.0);
        add("parseval-identity", worst_rel <= 1e-10 && two_err <= 1e-9,
            "worst relative mismatch " + detail::fmt(worst_rel) + " (tol 1e-10), |<u,u>-2| = " +
                detail::fmt(two_err) + " (tol 1e-9)");
    }

    // 4. oracle triangulation on span{sin(n theta), n <= 8}: spectral
    //    operator, PV quadrature and the sine-series eigen-relation agree
    //    pointwise; the eigen-relation itself is first confirmed against
    //    PV quadrature for n = 1..4.
    bool triangulation_ok = false;
    {
        double eigen_err = 0.0;
        for (int nn = 1; nn <= 4; ++nn) {
            const auto up = [nn](double t) {
                const double th = std::acos(t);
                return -static_cast<double>(nn) * std::cos(nn * th) / std::sin(th);
            };
            for (const double x : {-0.8, -0.35, 0.1, 0.45, 0.9}) {
                const double th = std::acos(x);
                const double want = nn * std::sin(nn * th) / (2.0 * std::sin(th));
                eigen_err = std::max(eigen_err, std::abs(apply_prandtl_pv(up, x) - want));
            }
        }

        auto grid = make_omega_grid(n_default, L_default);
        const std::vector<double> c = {0.9, -0.45, 0.3, 0.2, -0.15, 0.1, -0.05, 0.025};
        const auto theta_of_omega = [](double w) { return 2.0 * std::atan(std::exp(-w)); };
        auto u = sample_omega(
            [&](double w) {
                const double th = theta_of_omega(w);
                double acc = 0.0;
                for (std::size_t k = 0; k < c.size(); ++k)
                    acc += c[k] * std::sin((k + 1.0) * th);
                return std::complex<double>(acc, 0.0);
            },
            grid);
        const auto uprime = [&](double t) {
            const double th = std::acos(t);
            double acc = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k)
                acc += -c[k] * (k + 1.0) * std::cos((k + 1.0) * th) / std::sin(th);
            return acc;
        };
        const GlauertExpansion e(c);
        const GridFunction Ku = apply_prandtl_spectral(u);

        const int points = quick ? 9 : 25;
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
            const double x_target = -0.96 + 1.92 * i / (points - 1.0);
            const double w_target = std::atanh(x_target);
            const std::size_t j = static_cast<std::size_t>(
                std::llround(w_target / grid->step() + static_cast<double>(grid->size()) / 2.0));
            const double xj = grid->x(j);
            const double th = theta_of_omega(grid->omega(j));
            const double spectral = Ku[j].real() / grid->weight(j);
            const double pv = apply_prandtl_pv(uprime, xj);
            const double gl = glauert_apply(e, th);
            worst = std::max({worst, std::abs(spectral - pv), std::abs(spectral - gl),
                              std::abs(pv - gl)});
        }
        triangulation_ok = eigen_err <= 1e-8 && worst <= 1e-6;
        add("oracle-triangulation", triangulation_ok,
            "eigen-relation vs PV " + detail::fmt(eigen_err) + " (tol 1e-8), three-way max " +
                detail::fmt(worst) + " at " + std::to_string(points) + " points (tol 1e-6)");
    }

    // 5. closed-form solution for the elliptic coefficient: with
    //    p = p0 sqrt(1-x^2) and f = 1 the solution is A sqrt(1-x^2),
    //    A = 2 p0/(2 + p0) as fixed by the eigen-relation confirmed above.
    {
        const double p0 = 2.0;
        const double amplitude = 2.0 * p0 / (2.0 + p0);
        auto grid = make_omega_grid(n_default, 20.0);
        ProblemSpec spec(CoefficientSpec::elliptic(p0), grid, [](double) { return 1.0; });
        auto [u, rep] = solve_weak(spec);
        double dev = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j)
            dev = std::max(dev,
                           std::abs(u[j] - std::complex<double>(amplitude / std::cosh(grid->omega(j)),
                                                                0.0)));
        const GlauertExpansion g = solve_glauert(spec, 8);
        double coef_err = std::abs(g.coefficients[0] - amplitude);
        for (std::size_t k = 1; k < g.coefficients.size(); ++k)
            coef_err = std::max(coef_err, std::abs(g.coefficients[k]));
        add("elliptic-closed-form", triangulation_ok && dev <= 1e-6 && coef_err <= 1e-8,
            "max deviation from closed form " + detail::fmt(dev) +
                " (tol 1e-6), collocation coefficient error " + detail::fmt(coef_err) +
                " (tol 1e-8)");
    }

    // preset x rhs matrix shared by the bound checks
    const std::vector<detail::MatrixCase> matrix = detail::run_preset_matrix(n_default, L_default);
    const auto bound_margin = [&](const std::string& key) {
        double worst = std::numeric_limits<double>::infinity();
        std::string worst_label;
        for (const auto& mc : matrix)
            for (const auto& b : mc.report.bounds)
                if (b.name.rfind(key, 0) == 0) {
                    const double slack = b.rhs - b.lhs;
                    if (slack < worst) {
                        worst = slack;
                        worst_label = mc.label;
                    }
                }
        return std::make_pair(worst, worst_label);
    };

    // 6. solvability bound ||u||_{1/2} <= pi ||f||_{L2,r}
    {
        const auto [slack, label] = bound_margin("half_norm_vs_rhs");
        add("half-norm-bound", slack >= 0.0,
            "min slack " + detail::fmt(slack) + " (" + label + ")");
    }

    // 7. regularity bound ||u||_1^2 <= C2 ||f||^2 and the coefficient
    //    energy bound int V |u|^2 <= (pi/4) ||f||^2
    {
        const auto [s1, l1] = bound_margin("h1_regularity");
        const auto [s2, l2] = bound_margin("coefficient_energy");
        add("h1-regularity-bound", s1 >= 0.0 && s2 >= 0.0,
            "min slack " + detail::fmt(std::min(s1, s2)) + " (" + (s1 < s2 ? l1 : l2) + ")");
    }

    // 8. interpolation bound at theta = 1/4
    {
        const auto [slack, label] = bound_margin("interpolation_theta_0.25");
        add("interpolation-bound", slack >= 0.0,
            "min slack " + detail::fmt(slack) + " (" + label + ")");
    }

    // 9. sup-norm embedding on all solutions and a random sech family;
    //    boundary decay of the solutions
    {
        double worst_embed = std::numeric_limits<double>::infinity();
        double worst_decay = -std::numeric_limits<double>::infinity();
        for (const auto& mc : matrix) {
            const double h1 = mc.report.norms.h_one;
            worst_embed = std::min(worst_embed,
                                   embedding_constant(1.0) * h1 - detail::max_norm(mc.solution));
            worst_decay = std::max(worst_decay, boundary_decay(mc.solution) - 1e-3 * h1);
        }
        auto grid = make_omega_grid(n_default, L_default);
        std::uint64_t state = 0x2545F4914F6CDD1DULL;
        const auto uniform = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return static_cast<double>(state >> 11) / 9007199254740992.0;
        };
        const int families = quick ? 5 : 20;
        for (int t = 0; t < families; ++t) {
            const int bumps = 1 + static_cast<int>(uniform() * 3.0);
            std::vector<double> a(bumps), b(bumps), amp(bumps);
            for (int q = 0; q < bumps; ++q) {
                a[q] = 0.8 + 1.2 * uniform();
                b[q] = -3.0 + 6.0 * uniform();
                amp[q] = -1.0 + 2.0 * uniform();
            }
            auto u = sample_omega(
                [&](double w) {
                    double acc = 0.0;
                    for (int q = 0; q < bumps; ++q) acc += amp[q] / std::cosh(a[q] * (w - b[q]));
                    return std::complex<double>(acc, 0.0);
                },
                grid);
            const double h1 = hs_norm(forward(u), 1.0);
            worst_embed =
                std::min(worst_embed, embedding_constant(1.0) * h1 - detail::max_norm(u));
        }
        add("sup-embedding-and-decay", worst_embed >= 0.0 && worst_decay <= 0.0,
            "min embedding slack " + detail::fmt(worst_embed) + ", max decay excess " +
                detail::fmt(worst_decay));
    }

    // 10. two-sided symbol bounds at every spectral node (construction of
    //     MultiplierTable is the hard assertion; re-checked explicitly)
    {
        bool ok = true;
        std::string msg = "exact inequalities hold at all nodes";
        try {
            for (const std::size_t n : {n_default, 2 * n_default}) {
                auto dual = make_dual_grid(make_omega_grid(n, L_default));
                const MultiplierTable tab(dual);
                const double inv_pi2 = (1.0 / pi) * (1.0 / pi);
                for (std::size_t k = 0; k < tab.values().size(); ++k) {
                    const double xi = dual->xi(k);
                    const double m2 = tab[k] * tab[k];
                    if (!(inv_pi2 + (2.0 / 3.0) * xi * xi <= m2 && m2 <= inv_pi2 + xi * xi)) {
                        ok = false;
                        msg = "violated at node " + std::to_string(k);
                    }
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            msg = e.what();
        }
        add("multiplier-two-sided-bounds", ok, msg);
    }

    // 11. grid convergence on the smooth presets and CG iteration budget
    {
        double worst_rel = 0.0;
        for (const auto* kind : {"elliptic", "constant"}) {
            double prev = 0.0;
            for (const std::size_t n : {n_default, 2 * n_default}) {
                auto grid = make_omega_grid(n, L_default);
                CoefficientSpec coeff = std::string(kind) == "elliptic"
                                            ? CoefficientSpec::elliptic(2.0)
                                            : CoefficientSpec::constant(1.0);
                ProblemSpec spec(coeff, grid, [](double) { return 1.0; });
                auto [u, rep] = solve_weak(spec);
                if (n != n_default)
                    worst_rel = std::max(worst_rel, std::abs(rep.norms.l2_tilde - prev) / prev);
                prev = rep.norms.l2_tilde;
            }
        }
        std::size_t max_iters = 0;
        for (const auto& mc : matrix) max_iters = std::max(max_iters, mc.report.iterations);
        add("grid-convergence-and-cg", worst_rel <= 1e-6 && max_iters <= 300,
            "norm change under refinement " + detail::fmt(worst_rel) +
                " (tol 1e-6), max CG iterations " + std::to_string(max_iters) + " (cap 300)");
    }

    return results;
}

inline int count_failures(const std::vector<CheckResult>& results) {
    int fails = 0;
    for (const auto& r : results)
        if (!r.pass) ++fails;
    return fails;
}

inline void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        os << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(30) << r.name << "  "
           << r.detail << "\n";
}

} // namespace prandtl

#endif
