#ifndef PRANDTL_OPERATORS_HPP
#define PRANDTL_OPERATORS_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "prandtl/grid.hpp"
#include "prandtl/transform.hpp"

namespace prandtl {

/// Quadrature failed to reach the requested accuracy; carries the best
/// achieved error estimate.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

namespace detail {

struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};

/// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
/// Legendre recurrence.
inline GaussRule gauss_legendre(int m) {
    GaussRule r;
    r.node.resize(m);
    r.weight.resize(m);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        r.node[i] = -t;
        r.node[m - 1 - i] = t;
        r.weight[i] = r.weight[m - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}

inline const GaussRule& gauss20() {
    static const GaussRule r = gauss_legendre(20);
    return r;
}

/// Composite 20-point Gauss over [a,b] split into `panels` equal panels.
template <class F>
double panel_integrate(F&& f, double a, double b, int panels) {
    const GaussRule& g = gauss20();
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * w;
        double acc = 0.0;
        for (std::size_t q = 0; q < g.node.size(); ++q)
            acc += g.weight[q] * f(mid + 0.5 * w * g.node[q]);
        total += 0.5 * w * acc;
    }
    return total;
}

} // namespace detail

/**
 * Spectral symbol of the weighted singular operator:
 *
 *   m(xi) = xi coth(pi xi),  m(0) = 1/pi,
 *
 * even, continuous, >= 1/pi everywhere.  A quadratic series covers the
 * removable singularity and m collapses to |xi| once coth saturates.
 */
inline double multiplier(double xi) {
    if (!std::isfinite(xi)) throw std::domain_error("multiplier: xi must be finite");
    const double inv_pi = 1.0 / 3.14159265358979323846;
    const double pi = 3.14159265358979323846;
    const double a = std::abs(xi);
    if (a < 1e-4) return inv_pi + pi * xi * xi / 3.0;
    if (pi * a > 30.0) return a;  // coth(pi xi) = 1 within 1e-26 here
    return xi / std::tanh(pi * xi);
}

/**
 * Multiplier sampled on a spectral grid.  Construction verifies the
 * two-sided bounds
 *
 *   1/pi^2 + (2/3) xi^2 <= m(xi)^2 <= 1/pi^2 + xi^2
 *
 * and positivity m >= 1/pi at every node, as hard assertions.
 */
class MultiplierTable {
public:
    explicit MultiplierTable(std::shared_ptr<const SpectralGrid> grid) : grid_(std::move(grid)) {
        if (!grid_) throw std::invalid_argument("MultiplierTable: null grid");
        const double inv_pi = 1.0 / 3.14159265358979323846;
        const double inv_pi2 = inv_pi * inv_pi;
        m_.resize(grid_->size());
        for (std::size_t k = 0; k < m_.size(); ++k) {
            const double xi = grid_->xi(k);
            const double m = multiplier(xi);
            if (!(m >= inv_pi))
                throw std::logic_error("MultiplierTable: positivity m >= 1/pi violated at node " +
                                       std::to_string(k));
            const double m2 = m * m;
            if (!(inv_pi2 + (2.0 / 3.0) * xi * xi <= m2 && m2 <= inv_pi2 + xi * xi))
                throw std::logic_error("MultiplierTable: two-sided symbol bound violated at node " +
                                       std::to_string(k));
            m_[k] = m;
        }
    }

    const std::shared_ptr<const SpectralGrid>& grid() const { return grid_; }
    double operator[](std::size_t k) const { return m_[k]; }
    const std::vector<double>& values() const { return m_; }

private:
    std::shared_ptr<const SpectralGrid> grid_;
    std::vector<double> m_;
};

/**
 * Weighted Prandtl operator in spectral form:
 *
 *   u  |->  -(1-x^2) (1/2pi) PV int u'(t)/(t-x) dt ,
 *
 * computed as the inverse image of m(xi) U(xi).  Note the output carries
 * the (1-x^2) weight.
 */
inline GridFunction apply_prandtl_spectral(const GridFunction& u) {
    auto dual = make_dual_grid(u.grid());
    const SpectralFunction U = forward(u, dual);
    std::vector<std::complex<double>> v(U.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = multiplier(dual->xi(k)) * U[k];
    return inverse(SpectralFunction(dual, std::move(v)));
}

/**
 * Principal-value oracle for -(1/2pi) PV int u'(t)/(t-x) dt, independent of
 * the transform machinery.  Singularity subtraction,
 *
 *   PV int u'(t)/(t-x) dt = int (u'(t)-u'(x))/(t-x) dt + u'(x) ln((1-x)/(1+x)),
 *
 * then tanh-stretched composite Gauss with the endpoint cutoff eps halved
 * and Richardson-extrapolated (the truncated tail scales like sqrt(eps))
 * until the extrapolant settles below 1e-9.
 */
inline double apply_prandtl_pv(const std::function<double(double)>& u_prime, double x) {
    if (!(std::abs(x) < 1.0))
        throw std::domain_error("apply_prandtl_pv: |x| must be < 1");
    const double pi = 3.14159265358979323846;
    const double upx = u_prime(x);
    const double tau0 = std::atanh(x);

    const auto integrand = [&](double tau) {
        const double t = std::tanh(tau);
        const double s = 1.0 / std::cosh(tau);
        return (u_prime(t) - upx) / (t - x) * (s * s);
    };
    const auto level_value = [&](double eps) {
        const double T = 0.5 * std::log((2.0 - eps) / eps);
        const int p1 = 2 * std::max(8, static_cast<int>(std::ceil((T + tau0) * 4.0)));
        const int p2 = 2 * std::max(8, static_cast<int>(std::ceil((T - tau0) * 4.0)));
        return detail::panel_integrate(integrand, -T, tau0, p1) +
               detail::panel_integrate(integrand, tau0, T, p2);
    };

    const double tol = 1e-9;
    double eps = 1e-6;
    double prev = level_value(eps);
    double prev_extrap = 0.0;
    bool have_extrap = false;
    double value = 0.0;
    bool converged = false;
    double change = 0.0;
    // refinement stops where tanh(T) would saturate to 1 in binary64 and
    // the integrand could no longer avoid the endpoints; converging inputs
    // settle around eps ~ 1e-10, far from the cap
    while (eps > 8e-16) {
        eps *= 0.5;
        const double cur = level_value(eps);
        const double extrap = cur + (cur - prev) / (std::sqrt(2.0) - 1.0);
        if (have_extrap) {
            change = std::abs(extrap - prev_extrap);
            if (change < tol) {
                value = extrap;
                converged = true;
                break;
            }
        }
        prev_extrap = extrap;
        have_extrap = true;
        prev = cur;
    }
    if (!converged)
        throw AccuracyError("apply_prandtl_pv: endpoint extrapolation did not converge", change);
    return -(value + upx * (-2.0 * tau0)) / (2.0 * pi);
}

/// Sine-series representation u(cos theta) = sum_{n=1}^{N} A_n sin(n theta);
/// vanishes at x = +-1 by construction.
struct GlauertExpansion {
    std::vector<double> coefficients;  // A_1..A_N

    explicit GlauertExpansion(std::vector<double> a) : coefficients(std::move(a)) {
        for (double c : coefficients)
            if (!std::isfinite(c))
                throw std::invalid_argument("GlauertExpansion: non-finite coefficient");
    }

    std::size_t modes() const { return coefficients.size(); }

    double evaluate(double theta) const {
        double acc = 0.0;
        for (std::size_t n = 1; n <= coefficients.size(); ++n)
            acc += coefficients[n - 1] * std::sin(static_cast<double>(n) * theta);
        return acc;
    }
};

/**
 * Image of the sine series under -(1/2pi) int u'(t)/(t-x) dt with
 * x = cos(theta):
 *
 *   sum A_n n sin(n theta) / (2 sin theta).
 *
 * The eigen-relation behind it (sin(n theta) maps to n sin(n theta)/(2 sin
 * theta)) is confirmed against apply_prandtl_pv in the test suite before
 * being relied on.
 */
inline double glauert_apply(const GlauertExpansion& e, double theta) {
    const double pi = 3.14159265358979323846;
    if (!(theta > 0.0 && theta < pi))
        throw std::domain_error("glauert_apply: theta must lie in (0, pi)");
    const double s = std::sin(theta);
    double acc = 0.0;
    for (std::size_t n = 1; n <= e.coefficients.size(); ++n)
        acc += e.coefficients[n - 1] * static_cast<double>(n) *
               std::sin(static_cast<double>(n) * theta);
    return acc / (2.0 * s);
}

/**
 * Numerical evaluation of the principal-value integral
 *
 *   PV int_{-1}^{1} (1/y) ((1-y)/(1+y))^{i xi} dy/(1-y^2),
 *
 * symmetric at y = 0 and symmetrically truncated at +-(1-eps).  Folding
 * the integrand reduces it to -2i int_0^Omega coth(w) sin(2 xi w) dw with
 * Omega = artanh(1-eps).  The truncated value oscillates like
 * cos(xi ln(2/eps))/xi, so successive eps levels are paired half an
 * oscillation period apart and averaged; the averaged sequence is driven
 * below 1e-9.  The expected value is -i pi coth(pi xi).
 */
inline std::complex<double> verify_coth_image(double xi) {
    if (!(xi != 0.0) || !(std::abs(xi) <= 10.0) || !std::isfinite(xi))
        throw std::domain_error("verify_coth_image: requires 0 < |xi| <= 10");

    const auto level_value = [&](double eps) {
        const double Omega = 0.5 * std::log((2.0 - eps) / eps);
        const auto f = [&](double w) {
            if (std::abs(w) < 1e-8) return 2.0 * xi;
            return std::sin(2.0 * xi * w) / std::tanh(w);
        };
        const int panels = std::max(16, static_cast<int>(std::ceil(Omega * (6.0 + 2.0 * std::abs(xi)))));
        return std::complex<double>(0.0, -2.0) * detail::panel_integrate(f, 0.0, Omega, panels);
    };

    const double tol = 1e-9;
    const double half_period = std::exp(-3.14159265358979323846 / std::abs(xi));
    double eps = 1e-3;
    bool have_prev = false;
    std::complex<double> prev{0.0, 0.0};
    double change = 0.0;
    for (int level = 0; level < 60 && eps * half_period > 1e-260; ++level) {
        const std::complex<double> avg = 0.5 * (level_value(eps) + level_value(eps * half_period));
        if (have_prev) {
            change = std::abs(avg - prev);
            if (change < tol) return avg;
        }
        prev = avg;
        have_prev = true;
        eps *= 0.25;
    }
    throw AccuracyError("verify_coth_image: endpoint averaging did not converge", change);
}

} // namespace prandtl

#endif
