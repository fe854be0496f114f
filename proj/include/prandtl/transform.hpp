#ifndef PRANDTL_TRANSFORM_HPP
#define PRANDTL_TRANSFORM_HPP

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "prandtl/fft.hpp"
#include "prandtl/grid.hpp"

namespace prandtl {

/**
 * Discrete realization of the interval transform
 *
 *   U(xi) = int_{-1}^{1} u(y) ((1-y)/(1+y))^{i xi} dy/(1-y^2)
 *         = int u(tanh w) e^{-2 i xi w} dw,
 *
 * by the trapezoidal rule on the uniform omega grid.  Because the grid is
 * the standard DFT layout with a node at omega = 0 and n divisible by 4,
 * the rule reduces to
 *
 *   U_k = h (-1)^k DFT[(-1)^j u_j]_k ,
 *
 * and the discrete forward/inverse pair is exactly unitary up to the
 * constant 1/sqrt(pi).
 */
inline SpectralFunction forward(const GridFunction& u,
                                std::shared_ptr<const SpectralGrid> target = nullptr) {
    const auto& grid = *u.grid();
    const std::size_t n = grid.size();
    if (target) {
        if (target->size() != n || target->source() == nullptr ||
            !target->source()->structurally_equal(grid))
            throw std::invalid_argument("forward: spectral grid is not the dual of the input grid");
    } else {
        target = make_dual_grid(u.grid());
    }
    std::vector<std::complex<double>> a(u.values());
    for (std::size_t j = 1; j < n; j += 2) a[j] = -a[j];
    detail::fft_pow2(a, -1);
    const double h = grid.step();
    for (std::size_t k = 0; k < n; ++k) a[k] *= (k % 2 == 0) ? h : -h;
    return SpectralFunction(std::move(target), std::move(a));
}

/// Inverse transform u(x) = (1/pi) int U(xi) e^{2 i xi w} dxi; exact inverse
/// of `forward` on the paired grids.
inline GridFunction inverse(const SpectralFunction& U) {
    const auto& sg = *U.grid();
    const std::shared_ptr<const OmegaGrid>& og = sg.source();
    if (!og) throw std::invalid_argument("inverse: spectral grid has no source grid");
    const std::size_t n = sg.size();
    std::vector<std::complex<double>> a(U.values());
    for (std::size_t k = 1; k < n; k += 2) a[k] = -a[k];
    detail::fft_pow2(a, +1);
    const double c = sg.step() / 3.14159265358979323846;
    for (std::size_t j = 0; j < n; ++j) a[j] *= (j % 2 == 0) ? c : -c;
    return GridFunction(og, std::move(a));
}

/// Weighted inner product int u conj(g) dx/(1-x^2) = h sum u_j conj(g_j);
/// by the Parseval identity it equals (1/pi) int U conj(G) dxi.
inline std::complex<double> pairing(const GridFunction& u, const GridFunction& g) {
    if (!u.grid()->structurally_equal(*g.grid()))
        throw std::invalid_argument("pairing: grid mismatch");
    std::complex<double> acc{0.0, 0.0};
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j) acc += u[j] * std::conj(g[j]);
    return acc * u.grid()->step();
}

/// Image of (1-y^2) u'(y): multiplication by 2 i xi in the spectrum.
inline SpectralFunction derivative_image(const SpectralFunction& U) {
    std::vector<std::complex<double>> a(U.values());
    const auto& sg = *U.grid();
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] *= std::complex<double>(0.0, 2.0 * sg.xi(k));
    return SpectralFunction(U.grid(), std::move(a));
}

namespace detail {

inline void check_l1_proxy(const GridFunction& v) {
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += std::abs(v[j]);
    s *= v.grid()->step();
    if (!(s <= 1e12))
        throw std::invalid_argument("convolve: second factor fails the discrete weighted-L1 bound");
}

/// Embeds u into a grid twice as wide (same step), zero outside the
/// original window.
inline GridFunction zero_pad(const GridFunction& u) {
    const auto& g = *u.grid();
    auto wide = make_omega_grid(2 * g.size(), 2.0 * g.half_width());
    std::vector<std::complex<double>> v(wide->size(), {0.0, 0.0});
    const std::size_t off = g.size() / 2;
    for (std::size_t j = 0; j < g.size(); ++j) v[off + j] = u[j];
    return GridFunction(std::move(wide), std::move(v));
}

inline GridFunction crop_half(const GridFunction& w, std::shared_ptr<const OmegaGrid> grid) {
    const std::size_t n = grid->size();
    std::vector<std::complex<double>> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = w[n / 2 + j];
    return GridFunction(std::move(grid), std::move(v));
}

template <class SpectralWeight>
GridFunction spectral_product(const GridFunction& u, const GridFunction& v, bool pad,
                              SpectralWeight&& weight) {
    if (!u.grid()->structurally_equal(*v.grid()))
        throw std::invalid_argument("convolve: grid mismatch");
    check_l1_proxy(v);
    if (pad) {
        const GridFunction up = zero_pad(u);
        const GridFunction vp = zero_pad(v);
        auto dual = make_dual_grid(up.grid());
        const SpectralFunction U = forward(up, dual);
        const SpectralFunction V = forward(vp, dual);
        std::vector<std::complex<double>> prod(U.size());
        for (std::size_t k = 0; k < prod.size(); ++k)
            prod[k] = weight(dual->xi(k)) * U[k] * V[k];
        return crop_half(inverse(SpectralFunction(dual, std::move(prod))), u.grid());
    }
    auto dual = make_dual_grid(u.grid());
    const SpectralFunction U = forward(u, dual);
    const SpectralFunction V = forward(v, dual);
    std::vector<std::complex<double>> prod(U.size());
    for (std::size_t k = 0; k < prod.size(); ++k)
        prod[k] = weight(dual->xi(k)) * U[k] * V[k];
    return inverse(SpectralFunction(dual, std::move(prod)));
}

} // namespace detail

/**
 * Interval convolution
 *
 *   w(y) = int_{-1}^{1} u(x) v((y-x)/(1-xy)) dx/(1-x^2),
 *
 * whose image is U(xi) V(xi).  In omega coordinates this is an ordinary
 * line convolution, realized spectrally.  `pad` requests 2x zero-padding
 * to suppress wrap-around when the factors decay slowly.
 */
inline GridFunction convolve(const GridFunction& u, const GridFunction& v, bool pad = false) {
    return detail::spectral_product(u, v, pad, [](double) { return std::complex<double>(1.0, 0.0); });
}

/// Convolution against the derivative, int u'(x) v((y-x)/(1-xy)) dx, with
/// image 2 i xi U(xi) V(xi).
inline GridFunction convolve_derivative(const GridFunction& u, const GridFunction& v,
                                        bool pad = false) {
    return detail::spectral_product(u, v, pad,
                                    [](double xi) { return std::complex<double>(0.0, 2.0 * xi); });
}

} // namespace prandtl

#endif
