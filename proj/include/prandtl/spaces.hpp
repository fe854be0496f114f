#ifndef PRANDTL_SPACES_HPP
#define PRANDTL_SPACES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "prandtl/grid.hpp"
#include "prandtl/transform.hpp"

namespace prandtl {

namespace detail {

/// Lanczos approximation (g = 7, 9 coefficients) for Gamma(z), z > 0.
/// Relative error below 1e-13 on the range used here.
inline double lanczos_gamma(double z) {
    static const double coef[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = 3.14159265358979323846;
    if (z < 0.5)
        return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
    z -= 1.0;
    double acc = coef[0];
    for (int i = 1; i < 9; ++i) acc += coef[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

} // namespace detail

enum class NormSide { spectral, spatial };

struct NormReport {
    double s = 0.0;
    double value = 0.0;
    NormSide side = NormSide::spectral;
};

/**
 * Weighted Sobolev norm of index s >= 0,
 *
 *   ||u||^2 = (1/pi) int (1 + 4 xi^2)^s |U(xi)|^2 dxi,
 *
 * evaluated on the truncated discrete spectrum.
 */
inline double hs_norm(const SpectralFunction& U, double s) {
    if (!(s >= 0.0))
        throw std::domain_error("hs_norm: index s must be >= 0");
    const auto& g = *U.grid();
    double acc = 0.0;
    for (std::size_t k = 0; k < U.size(); ++k) {
        const double xi = g.xi(k);
        acc += std::pow(1.0 + 4.0 * xi * xi, s) * std::norm(U[k]);
    }
    const double pi = 3.14159265358979323846;
    return std::sqrt(acc * g.step() / pi);
}

inline NormReport hs_norm_report(const SpectralFunction& U, double s) {
    return NormReport{s, hs_norm(U, s), NormSide::spectral};
}

/**
 * Index-1 norm computed purely in physical space,
 *
 *   ||u||^2 = int ( |u|^2/(1-x^2) + (1-x^2)|u'|^2 ) dx
 *           = int ( |u1|^2 + |du1/dw|^2 ) dw ,
 *
 * with the omega derivative by 4th-order centered differences (one-sided
 * closures at the two edge nodes).  Independent of the FFT path; agrees
 * with hs_norm(forward(u), 1) to discretization accuracy.
 */
inline double h1_norm_spatial(const GridFunction& u) {
    const std::size_t n = u.size();
    const double h = u.grid()->step();
    const auto& v = u.values();
    std::vector<std::complex<double>> du(n);
    for (std::size_t j = 2; j + 2 < n; ++j)
        du[j] = (-v[j + 2] + 8.0 * v[j + 1] - 8.0 * v[j - 1] + v[j - 2]) / (12.0 * h);
    du[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
    du[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
    du[n - 2] =
        (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / (12.0 * h);
    du[n - 1] =
        (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) /
        (12.0 * h);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += std::norm(v[j]) + std::norm(du[j]);
    return std::sqrt(acc * h);
}

inline NormReport h1_norm_report_spatial(const GridFunction& u) {
    return NormReport{1.0, h1_norm_spatial(u), NormSide::spatial};
}

/// || f ||_{L_{2,r}} = sqrt( int (1-x^2) |f|^2 dx ), the natural class for
/// the right-hand side.  Since dx = (1-x^2) dw the discrete form is
/// h sum (1-x_j^2)^2 |f_j|^2 with the stable sech^2 weights.
inline double l2r_norm(const GridFunction& f) {
    const auto& g = *f.grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double w = g.weight(j);
        acc += w * w * std::norm(f[j]);
    }
    return std::sqrt(acc * g.step());
}

/// Sharp constant of the sup-norm embedding for index s > 1/2:
/// C(s) = sqrt( Gamma(s - 1/2) / (2 sqrt(pi) Gamma(s)) ).
inline double embedding_constant(double s) {
    if (!(s > 0.5))
        throw std::domain_error("embedding_constant: requires s > 1/2 (constant diverges as s -> 1/2)");
    const double pi = 3.14159265358979323846;
    return std::sqrt(detail::lanczos_gamma(s - 0.5) / (2.0 * std::sqrt(pi) * detail::lanczos_gamma(s)));
}

} // namespace prandtl

#endif
