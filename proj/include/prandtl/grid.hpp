#ifndef PRANDTL_GRID_HPP
#define PRANDTL_GRID_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "prandtl/fft.hpp"

namespace prandtl {

/// omega = artanh(x) = (1/2) ln((1+x)/(1-x)), the coordinate in which the
/// interval (-1,1) becomes the whole line.  Throws for |x| >= 1.
inline double omega_of_x(double x) {
    if (!(std::abs(x) < 1.0))
        throw std::domain_error("omega_of_x: |x| must be < 1, got " + std::to_string(x));
    return std::atanh(x);
}

/// x = tanh(omega), the inverse map, kept strictly inside (-1,1) where
/// tanh saturates in binary64 (|omega| >~ 18.7).  Throws for non-finite
/// input.
inline double x_of_omega(double omega) {
    if (!std::isfinite(omega))
        throw std::domain_error("x_of_omega: omega must be finite");
    const double x = std::tanh(omega);
    if (x >= 1.0) return std::nextafter(1.0, 0.0);
    if (x <= -1.0) return std::nextafter(-1.0, 0.0);
    return x;
}

/**
 * Uniform grid in omega = artanh(x) with an even, power-of-two point count
 * and a node at omega = 0:
 *
 *   omega_j = (j - n/2) h,   x_j = tanh(omega_j),   j = 0..n-1.
 *
 * Nodes cluster exponentially toward x = +-1.  The squared weight
 * 1 - x_j^2 = sech^2(omega_j) is stored separately because computing it
 * as 1 - x^2 loses all precision once x is within ~1e-8 of the endpoints.
 */
class OmegaGrid {
public:
    OmegaGrid(std::size_t n, double half_width) : n_(n), L_(half_width) {
        if (!detail::is_power_of_two(n) || n < 8)
            throw std::invalid_argument("OmegaGrid: n must be a power of two >= 8");
        if (!(half_width > 0.0) || !std::isfinite(half_width))
            throw std::invalid_argument("OmegaGrid: half-width must be positive and finite");
        h_ = 2.0 * half_width / static_cast<double>(n);
        omega_.resize(n);
        x_.resize(n);
        sech2_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double om = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * h_;
            omega_[j] = om;
            x_[j] = x_of_omega(om);
            const double s = 1.0 / std::cosh(om);
            sech2_[j] = s * s;
        }
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (!(x_[j] <= x_[j + 1]))
                throw std::logic_error("OmegaGrid: x nodes not monotone");
    }

    std::size_t size() const { return n_; }
    double step() const { return h_; }
    double half_width() const { return L_; }
    double omega(std::size_t j) const { return omega_[j]; }
    double x(std::size_t j) const { return x_[j]; }
    /// 1 - x_j^2 evaluated stably as sech^2(omega_j).
    double weight(std::size_t j) const { return sech2_[j]; }
    const std::vector<double>& omegas() const { return omega_; }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& weights() const { return sech2_; }

    bool structurally_equal(const OmegaGrid& other) const {
        return n_ == other.n_ && h_ == other.h_;
    }

private:
    std::size_t n_;
    double L_;
    double h_;
    std::vector<double> omega_;
    std::vector<double> x_;
    std::vector<double> sech2_;
};

/**
 * DFT-dual grid of an OmegaGrid:
 *
 *   xi_k = (k - n/2) dxi,   dxi = pi / (n h),
 *
 * covering [-pi/(2h), pi/(2h)) with a node at xi = 0.
 */
class SpectralGrid {
public:
    explicit SpectralGrid(std::shared_ptr<const OmegaGrid> source)
        : source_(std::move(source)) {
        if (!source_) throw std::invalid_argument("SpectralGrid: null source grid");
        n_ = source_->size();
        dxi_ = 3.14159265358979323846 / (static_cast<double>(n_) * source_->step());
        xi_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k)
            xi_[k] = (static_cast<double>(k) - static_cast<double>(n_) / 2.0) * dxi_;
    }

    std::size_t size() const { return n_; }
    double step() const { return dxi_; }
    double xi(std::size_t k) const { return xi_[k]; }
    const std::vector<double>& xis() const { return xi_; }
    const std::shared_ptr<const OmegaGrid>& source() const { return source_; }

    bool structurally_equal(const SpectralGrid& other) const {
        return n_ == other.n_ && dxi_ == other.dxi_;
    }

private:
    std::shared_ptr<const OmegaGrid> source_;
    std::size_t n_;
    double dxi_;
    std::vector<double> xi_;
};

inline std::shared_ptr<const OmegaGrid> make_omega_grid(std::size_t n, double half_width) {
    return std::make_shared<const OmegaGrid>(n, half_width);
}

inline std::shared_ptr<const SpectralGrid> make_dual_grid(std::shared_ptr<const OmegaGrid> g) {
    return std::make_shared<const SpectralGrid>(std::move(g));
}

/// Complex samples v_j = v(x_j) on a tanh grid.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const OmegaGrid> grid, std::vector<std::complex<double>> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_) throw std::invalid_argument("GridFunction: null grid");
        if (values_.size() != grid_->size())
            throw std::invalid_argument("GridFunction: values length does not match grid");
        for (std::size_t j = 0; j < values_.size(); ++j)
            if (!std::isfinite(values_[j].real()) || !std::isfinite(values_[j].imag()))
                throw std::invalid_argument("GridFunction: non-finite value at node " + std::to_string(j));
    }

    const std::shared_ptr<const OmegaGrid>& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<std::complex<double>>& values() const { return values_; }
    std::complex<double> operator[](std::size_t j) const { return values_[j]; }

private:
    std::shared_ptr<const OmegaGrid> grid_;
    std::vector<std::complex<double>> values_;
};

/// Complex samples U_k = U(xi_k) on the spectral grid.
class SpectralFunction {
public:
    SpectralFunction(std::shared_ptr<const SpectralGrid> grid, std::vector<std::complex<double>> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_) throw std::invalid_argument("SpectralFunction: null grid");
        if (values_.size() != grid_->size())
            throw std::invalid_argument("SpectralFunction: values length does not match grid");
        for (std::size_t k = 0; k < values_.size(); ++k)
            if (!std::isfinite(values_[k].real()) || !std::isfinite(values_[k].imag()))
                throw std::invalid_argument("SpectralFunction: non-finite value at node " + std::to_string(k));
    }

    const std::shared_ptr<const SpectralGrid>& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<std::complex<double>>& values() const { return values_; }
    std::complex<double> operator[](std::size_t k) const { return values_[k]; }

private:
    std::shared_ptr<const SpectralGrid> grid_;
    std::vector<std::complex<double>> values_;
};

/// Samples a scalar function of x on the grid.  Throws if the callable
/// produces a non-finite value, naming the offending node.
template <class F>
GridFunction sample(F&& f, std::shared_ptr<const OmegaGrid> grid) {
    if (!grid) throw std::invalid_argument("sample: null grid");
    std::vector<std::complex<double>> v(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const std::complex<double> val = f(grid->x(j));
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw std::runtime_error("sample: non-finite value at node " + std::to_string(j) +
                                     " (x = " + std::to_string(grid->x(j)) + ")");
        v[j] = val;
    }
    return GridFunction(std::move(grid), std::move(v));
}

/// Samples a scalar function of omega; convenient for functions such as
/// sqrt(1-x^2) = sech(omega) that are better evaluated in the stretched
/// coordinate.
template <class F>
GridFunction sample_omega(F&& f, std::shared_ptr<const OmegaGrid> grid) {
    if (!grid) throw std::invalid_argument("sample_omega: null grid");
    std::vector<std::complex<double>> v(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const std::complex<double> val = f(grid->omega(j));
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw std::runtime_error("sample_omega: non-finite value at node " + std::to_string(j));
        v[j] = val;
    }
    return GridFunction(std::move(grid), std::move(v));
}

} // namespace prandtl

#endif
