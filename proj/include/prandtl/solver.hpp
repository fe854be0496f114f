#ifndef PRANDTL_SOLVER_HPP
#define PRANDTL_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "prandtl/grid.hpp"
#include "prandtl/operators.hpp"
#include "prandtl/spaces.hpp"
#include "prandtl/transform.hpp"

namespace prandtl {

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> residual_history)
        : std::runtime_error(what), residual_history_(std::move(residual_history)) {}
    const std::vector<double>& residual_history() const { return residual_history_; }

private:
    std::vector<double> residual_history_;
};

enum class CoefficientKind { elliptic, constant, triangular, tabulated };

/**
 * Coefficient V(x) = 1/p(x) of the zero-order term, described through the
 * bounded product W = (1-x^2) V(x) <= M.  The product, not bare V, is what
 * every computation samples: V itself blows up at the endpoints for the
 * degenerate presets.
 *
 * Presets:
 *   elliptic    p = p0 sqrt(1-x^2)   W = sqrt(1-x^2)/p0   M = 1/p0
 *   constant    p = p0               W = (1-x^2)/p0       M = 1/p0
 *   triangular  p = p0 (1-|x|)       W = (1+|x|)/p0       M = 2/p0
 */
class CoefficientSpec {
public:
    static CoefficientSpec elliptic(double p0) {
        return CoefficientSpec(CoefficientKind::elliptic, p0, 1.0 / p0);
    }
    static CoefficientSpec constant(double p0) {
        return CoefficientSpec(CoefficientKind::constant, p0, 1.0 / p0);
    }
    static CoefficientSpec triangular(double p0) {
        return CoefficientSpec(CoefficientKind::triangular, p0, 2.0 / p0);
    }
    /// Table of (x, p(x)) samples; interpolation acts on the weighted
    /// product in omega, never on bare V.
    static CoefficientSpec tabulated(std::vector<std::pair<double, double>> samples, double bound) {
        CoefficientSpec c(CoefficientKind::tabulated, 0.0, bound);
        if (samples.size() < 2)
            throw std::invalid_argument("CoefficientSpec: tabulated coefficient needs >= 2 samples");
        std::sort(samples.begin(), samples.end());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto [x, p] = samples[i];
            if (!(std::abs(x) < 1.0))
                throw std::invalid_argument("CoefficientSpec: table abscissa outside (-1,1)");
            if (!(p > 0.0))
                throw std::invalid_argument("CoefficientSpec: table requires p > 0");
            if (i > 0 && !(x > samples[i - 1].first))
                throw std::invalid_argument("CoefficientSpec: table abscissas must be distinct");
            const double om = std::atanh(x);
            const double s = 1.0 / std::cosh(om);
            c.table_omega_.push_back(om);
            c.table_w_.push_back(s * s / p);
        }
        c.samples_ = std::move(samples);
        return c;
    }

    CoefficientKind kind() const { return kind_; }
    double p0() const { return p0_; }
    double bound() const { return M_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    /// Same coefficient with a larger declared bound; the bound may only
    /// be loosened, since tightening it below the true sup of W would make
    /// the per-node degeneracy check fail.
    CoefficientSpec with_bound(double bound) const {
        if (!(bound >= M_))
            throw std::invalid_argument("CoefficientSpec: declared bound is below the preset value");
        CoefficientSpec c(*this);
        c.M_ = bound;
        return c;
    }

    /// W(omega) = (1-x^2) V(x) at x = tanh(omega), evaluated stably.
    double weighted_product(double omega) const {
        switch (kind_) {
            case CoefficientKind::elliptic:
                return 1.0 / (std::cosh(omega) * p0_);
            case CoefficientKind::constant: {
                const double s = 1.0 / std::cosh(omega);
                return s * s / p0_;
            }
            case CoefficientKind::triangular:
                return (1.0 + std::abs(std::tanh(omega))) / p0_;
            case CoefficientKind::tabulated: {
                if (omega <= table_omega_.front()) return table_w_.front();
                if (omega >= table_omega_.back()) return table_w_.back();
                const auto it = std::upper_bound(table_omega_.begin(), table_omega_.end(), omega);
                const std::size_t i = static_cast<std::size_t>(it - table_omega_.begin());
                const double t = (omega - table_omega_[i - 1]) / (table_omega_[i] - table_omega_[i - 1]);
                return (1.0 - t) * table_w_[i - 1] + t * table_w_[i];
            }
        }
        return 0.0;
    }

    /// Bare V(x); only valid away from the endpoints (used by the Glauert
    /// collocation oracle at interior nodes).
    double value(double x) const {
        const double om = omega_of_x(x);
        const double s = 1.0 / std::cosh(om);
        return weighted_product(om) / (s * s);
    }

    /// Samples W on a grid and enforces the degeneracy condition
    /// W_j <= M (1 + 1e-9) at every node.
    std::vector<double> sample_weighted(const OmegaGrid& grid) const {
        std::vector<double> w(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            w[j] = weighted_product(grid.omega(j));
            if (!(w[j] >= 0.0) || !std::isfinite(w[j]))
                throw std::invalid_argument("CoefficientSpec: W must be finite and >= 0 (node " +
                                            std::to_string(j) + ")");
            if (!(w[j] <= M_ * (1.0 + 1e-9)))
                throw std::invalid_argument(
                    "CoefficientSpec: (1-x^2) V(x) exceeds the declared bound M at node " +
                    std::to_string(j));
        }
        return w;
    }

private:
    CoefficientSpec(CoefficientKind k, double p0, double M) : kind_(k), p0_(p0), M_(M) {
        if (k != CoefficientKind::tabulated && !(p0 > 0.0))
            throw std::invalid_argument("CoefficientSpec: p0 must be positive");
        if (!(M > 0.0) || !std::isfinite(M))
            throw std::invalid_argument("CoefficientSpec: bound M must be positive and finite");
    }

    CoefficientKind kind_;
    double p0_;
    double M_;
    std::vector<std::pair<double, double>> samples_;
    std::vector<double> table_omega_;
    std::vector<double> table_w_;
};

/// Problem data: coefficient, right-hand side, grid and solver knobs.
/// The right-hand side is kept as a callable of x so that the collocation
/// oracle can evaluate it off-grid; constructing from a GridFunction
/// installs a linear-in-omega interpolant.
class ProblemSpec {
public:
    ProblemSpec(CoefficientSpec coefficient, std::shared_ptr<const OmegaGrid> grid,
                std::function<double(double)> rhs, double tol = 1e-10, std::size_t max_iter = 5000)
        : coefficient_(std::move(coefficient)),
          grid_(std::move(grid)),
          rhs_(std::move(rhs)),
          tol_(tol),
          max_iter_(max_iter) {
        if (!grid_) throw std::invalid_argument("ProblemSpec: null grid");
        if (!rhs_) throw std::invalid_argument("ProblemSpec: null right-hand side");
        if (!(tol_ > 0.0) || !(max_iter_ >= 1))
            throw std::invalid_argument("ProblemSpec: invalid solver parameters");
    }

    ProblemSpec(CoefficientSpec coefficient, const GridFunction& rhs_samples, double tol = 1e-10,
                std::size_t max_iter = 5000)
        : ProblemSpec(std::move(coefficient), rhs_samples.grid(),
                      make_interpolant(rhs_samples), tol, max_iter) {}

    const CoefficientSpec& coefficient() const { return coefficient_; }
    const std::shared_ptr<const OmegaGrid>& grid() const { return grid_; }
    const std::function<double(double)>& rhs() const { return rhs_; }
    double tol() const { return tol_; }
    std::size_t max_iter() const { return max_iter_; }

    GridFunction sampled_rhs() const {
        return sample([this](double x) { return std::complex<double>(rhs_(x), 0.0); }, grid_);
    }

private:
    static std::function<double(double)> make_interpolant(const GridFunction& f) {
        auto grid = f.grid();
        std::vector<double> vals(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) vals[j] = f[j].real();
        return [grid, vals = std::move(vals)](double x) {
            const double om = omega_of_x(x);
            const double h = grid->step();
            const double pos = om / h + static_cast<double>(grid->size()) / 2.0;
            if (pos <= 0.0) return vals.front();
            if (pos >= static_cast<double>(vals.size() - 1)) return vals.back();
            const std::size_t j = static_cast<std::size_t>(pos);
            const double t = pos - static_cast<double>(j);
            return (1.0 - t) * vals[j] + t * vals[j + 1];
        };
    }

    CoefficientSpec coefficient_;
    std::shared_ptr<const OmegaGrid> grid_;
    std::function<double(double)> rhs_;
    double tol_;
    std::size_t max_iter_;
};

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct SolveNorms {
    double l2_tilde = 0.0;   // ||u|| with s = 0
    double h_half = 0.0;     // s = 1/2
    double h_one = 0.0;      // s = 1
    double rhs_l2r = 0.0;    // ||f|| in L_{2,r}
};

struct SolveReport {
    std::size_t iterations = 0;
    double residual = 0.0;
    SolveNorms norms;
    std::vector<BoundCheck> bounds;
    double spectral_tail = 0.0;  // |U|^2 fraction in the top octave of xi
    bool tail_warning = false;
    std::vector<double> residual_history;
    std::vector<double> energy_history;
};

/// max(|u(x_0)|, |u(x_{n-1})|): how well the boundary conditions are met
/// by the exponential tail of the stretched grid.
inline double boundary_decay(const GridFunction& u) {
    return std::max(std::abs(u[0]), std::abs(u[u.size() - 1]));
}

/**
 * Evaluates the a-priori estimates for a computed solution:
 *   (a) ||u||_{1/2}           <= pi ||f||_{L2,r}
 *   (b) int V |u|^2 dx        <= (pi/4) ||f||^2_{L2,r}
 *   (c) ||u||_1^2             <= C2 ||f||^2_{L2,r},  C2 = pi^2 (2 + pi M / 2)
 *   (d) ||u||_{1/2 + theta}   <= pi^{1-2theta} C2^theta ||f||_{L2,r},
 *       theta in {0, 1/4, 1/2}
 *   (e) max |u|               <= C(1) ||u||_1
 * Failures are recorded, not thrown.
 */
inline std::vector<BoundCheck> verify_bounds(const GridFunction& u, const ProblemSpec& spec) {
    const double pi = 3.14159265358979323846;
    const auto& grid = *u.grid();
    const SpectralFunction U = forward(u);
    const GridFunction f = spec.sampled_rhs();
    const double f_l2r = l2r_norm(f);
    const double M = spec.coefficient().bound();
    const double C2 = pi * pi * (2.0 + pi * M / 2.0);

    const std::vector<double> W = spec.coefficient().sample_weighted(grid);
    double v_energy = 0.0;
    double sup = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        v_energy += W[j] * std::norm(u[j]);
        sup = std::max(sup, std::abs(u[j]));
    }
    v_energy *= grid.step();

    const double h_half = hs_norm(U, 0.5);
    const double h_one = hs_norm(U, 1.0);

    std::vector<BoundCheck> out;
    const auto record = [&out](std::string name, double lhs, double rhs) {
        out.push_back(BoundCheck{std::move(name), lhs, rhs, lhs <= rhs * (1.0 + 1e-8)});
    };
    record("half_norm_vs_rhs", h_half, pi * f_l2r);
    record("coefficient_energy", v_energy, (pi / 4.0) * f_l2r * f_l2r);
    record("h1_regularity", h_one * h_one, C2 * f_l2r * f_l2r);
    for (const double theta : {0.0, 0.25, 0.5}) {
        const double c_theta = std::pow(pi, 1.0 - 2.0 * theta) * std::pow(C2, theta);
        record("interpolation_theta_" + std::to_string(theta).substr(0, 4),
               hs_norm(U, 0.5 + theta), c_theta * f_l2r);
    }
    record("sup_embedding", sup, embedding_constant(1.0) * h_one);
    return out;
}

/**
 * Conjugate-gradient solution of the weak formulation.  Multiplying the
 * equation by (1-x^2) and passing to omega coordinates yields
 *
 *   (W + K) u1 = g,   W(w) = (1-x^2) V(x) in [0, M],   K = m(xi) in spectrum,
 *   g(w) = (1-x^2) f(x),
 *
 * which is symmetric positive definite on L2(dw).  Preconditioner:
 * (m(xi) + M/2)^{-1}, diagonal in the spectrum.  Each iterate is checked
 * for energy descent and for the coercivity [u,u]_1 >= (1/pi)||u||^2_{1/2}.
 */
inline std::pair<GridFunction, SolveReport> solve_weak(const ProblemSpec& spec) {
    const double pi = 3.14159265358979323846;
    const auto& grid_ptr = spec.grid();
    const OmegaGrid& grid = *grid_ptr;
    const std::size_t n = grid.size();
    const double h = grid.step();

    const std::vector<double> W = spec.coefficient().sample_weighted(grid);
    const double M = spec.coefficient().bound();
    auto dual = make_dual_grid(grid_ptr);
    const MultiplierTable mtab(dual);

    const GridFunction f = spec.sampled_rhs();
    std::vector<std::complex<double>> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = grid.weight(j) * f[j];

    const auto dot = [h, n](const std::vector<std::complex<double>>& a,
                            const std::vector<std::complex<double>>& b) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += std::conj(a[j]) * b[j];
        return h * acc;
    };
    const auto spectral_diag = [&](const std::vector<std::complex<double>>& v, bool precondition) {
        GridFunction vf(grid_ptr, v);
        SpectralFunction V = forward(vf, dual);
        std::vector<std::complex<double>> w(V.values());
        for (std::size_t k = 0; k < n; ++k)
            w[k] *= precondition ? 1.0 / (mtab[k] + 0.5 * M) : mtab[k];
        return inverse(SpectralFunction(dual, std::move(w))).values();
    };
    const auto apply_A = [&](const std::vector<std::complex<double>>& v) {
        std::vector<std::complex<double>> out = spectral_diag(v, false);
        for (std::size_t j = 0; j < n; ++j) out[j] += W[j] * v[j];
        return out;
    };

    SolveReport report;
    std::vector<std::complex<double>> u(n, {0.0, 0.0});
    std::vector<std::complex<double>> r = g;
    std::vector<std::complex<double>> z = spectral_diag(r, true);
    double rz = std::real(dot(r, z));
    const double rz0 = rz;

    if (rz0 <= 0.0) {
        // zero right-hand side: the unique solution is zero
        GridFunction uf(grid_ptr, std::move(u));
        report.residual = 0.0;
        report.iterations = 0;
        report.norms.rhs_l2r = l2r_norm(f);
        report.bounds = verify_bounds(uf, spec);
        return {std::move(uf), std::move(report)};
    }

    std::vector<std::complex<double>> p = z;
    bool converged = false;
    double prev_energy = 0.0;
    for (std::size_t it = 0; it < spec.max_iter(); ++it) {
        const double rel = std::sqrt(rz / rz0);
        report.residual_history.push_back(rel);
        if (rel <= spec.tol()) {
            converged = true;
            report.iterations = it;
            report.residual = rel;
            break;
        }
        const std::vector<std::complex<double>> Ap = apply_A(p);
        const double alpha = rz / std::real(dot(p, Ap));
        for (std::size_t j = 0; j < n; ++j) {
            u[j] += alpha * p[j];
            r[j] -= alpha * Ap[j];
        }

        // diagnostics on the accepted iterate: energy descent and coercivity
        std::complex<double> gu{0.0, 0.0}, ru{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            gu += std::conj(g[j]) * u[j];
            ru += std::conj(r[j]) * u[j];
        }
        const double energy = 0.5 * h * std::real(gu - ru) - h * std::real(gu);
        if (!report.energy_history.empty() &&
            !(energy <= prev_energy + 1e-12 * std::max(1.0, std::abs(prev_energy))))
            throw std::logic_error("solve_weak: CG energy increased");
        report.energy_history.push_back(energy);
        prev_energy = energy;

        const double form = h * std::real(gu - ru);  // [u,u]_1 = Re<Au,u>
        const double half = hs_norm(forward(GridFunction(grid_ptr, u), dual), 0.5);
        if (!(form >= (half * half / pi) * (1.0 - 1e-10)))
            throw std::logic_error("solve_weak: coercivity of the energy form violated");

        z = spectral_diag(r, true);
        const double rznew = std::real(dot(r, z));
        for (std::size_t j = 0; j < n; ++j) p[j] = z[j] + (rznew / rz) * p[j];
        rz = rznew;
    }
    if (!converged) {
        throw ConvergenceError("solve_weak: CG did not reach tol " + std::to_string(spec.tol()) +
                                   " within " + std::to_string(spec.max_iter()) + " iterations",
                               report.residual_history);
    }

    GridFunction uf(grid_ptr, std::move(u));
    const SpectralFunction U = forward(uf, dual);
    report.norms.l2_tilde = hs_norm(U, 0.0);
    report.norms.h_half = hs_norm(U, 0.5);
    report.norms.h_one = hs_norm(U, 1.0);
    report.norms.rhs_l2r = l2r_norm(f);
    report.bounds = verify_bounds(uf, spec);

    double tail = 0.0, total = 0.0;
    const double xi_cut = 0.5 * pi / (2.0 * h);
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(U[k]);
        total += e;
        if (std::abs(dual->xi(k)) >= xi_cut) tail += e;
    }
    report.spectral_tail = total > 0.0 ? tail / total : 0.0;
    report.tail_warning = report.spectral_tail > 1e-4;
    return {std::move(uf), std::move(report)};
}

/**
 * Multhopp-style collocation oracle: expands u in sin(n theta) and
 * collocates
 *
 *   sum_n A_n [ V(cos t_m) sin(n t_m) + n sin(n t_m)/(2 sin t_m) ] = f(cos t_m)
 *
 * at t_m = m pi/(N+1).  Dense LU; O(N^3), cross-check use only.
 */
inline GlauertExpansion solve_glauert(const ProblemSpec& spec, std::size_t N) {
    if (N < 1) throw std::invalid_argument("solve_glauert: N must be >= 1");
    const double pi = 3.14159265358979323846;
    Eigen::MatrixXd A(N, N);
    Eigen::VectorXd b(N);
    for (std::size_t m = 1; m <= N; ++m) {
        const double theta = static_cast<double>(m) * pi / static_cast<double>(N + 1);
        const double x = std::cos(theta);
        const double s = std::sin(theta);
        const double V = spec.coefficient().value(x);
        if (!std::isfinite(V))
            throw std::invalid_argument("solve_glauert: coefficient not finite at collocation node");
        for (std::size_t nn = 1; nn <= N; ++nn) {
            const double sn = std::sin(static_cast<double>(nn) * theta);
            A(m - 1, nn - 1) = V * sn + static_cast<double>(nn) * sn / (2.0 * s);
        }
        b(m - 1) = spec.rhs()(x);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14))
        throw std::runtime_error("solve_glauert: collocation matrix near-singular (rcond = " +
                                 std::to_string(rcond) + ")");
    const Eigen::VectorXd sol = lu.solve(b);
    return GlauertExpansion(std::vector<double>(sol.data(), sol.data() + sol.size()));
}

} // namespace prandtl

#endif
