#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "prandtl/grid.hpp"
#include "prandtl/spaces.hpp"
#include "prandtl/transform.hpp"

using namespace prandtl;
using cplx = std::complex<double>;

namespace {

GridFunction sech_fn(std::shared_ptr<const OmegaGrid> g) {
    return sample_omega([](double w) { return cplx(1.0 / std::cosh(w), 0.0); }, std::move(g));
}

/// Fine-trapezoid oracle for int_{-T}^{T} f(w) dw.
double line_integral(const std::function<double(double)>& f, double T, int steps) {
    const double h = 2.0 * T / steps;
    double acc = 0.5 * (f(-T) + f(T));
    for (int j = 1; j < steps; ++j) acc += f(-T + j * h);
    return acc * h;
}

} // namespace

TEST_CASE("index norms of sqrt(1-x^2)") {
    auto g = make_omega_grid(4096, 12.0);
    const SpectralFunction U = forward(sech_fn(g));

    // s = 0: int (1-x^2) dx/(1-x^2) = 2
    CHECK_THAT(hs_norm(U, 0.0), Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-9));

    // s = 1: 2 + int x^2 dx = 2 + 2/3 = 8/3, against the direct integral
    // oracle int (sech^2 + sech^2 tanh^2) dw
    const double oracle =
        line_integral([](double w) {
            const double s = 1.0 / std::cosh(w), t = std::tanh(w);
            return s * s * (1.0 + t * t);
        }, 30.0, 200000);
    CHECK_THAT(oracle, Catch::Matchers::WithinAbs(8.0 / 3.0, 1e-10));
    CHECK_THAT(hs_norm(U, 1.0), Catch::Matchers::WithinAbs(std::sqrt(8.0 / 3.0), 1e-8));

    auto zero = forward(sample([](double) { return cplx(0.0, 0.0); }, g));
    CHECK(hs_norm(zero, 0.0) == 0.0);
    CHECK(hs_norm(zero, 3.7) == 0.0);

    CHECK_THROWS_AS(hs_norm(U, -0.1), std::domain_error);

    const NormReport rep = hs_norm_report(U, 0.5);
    CHECK(rep.s == 0.5);
    CHECK(rep.value >= 0.0);
    CHECK(rep.side == NormSide::spectral);

    const NormReport spat = h1_norm_report_spatial(sech_fn(g));
    CHECK(spat.s == 1.0);
    CHECK(spat.side == NormSide::spatial);
    CHECK_THAT(spat.value, Catch::Matchers::WithinAbs(std::sqrt(8.0 / 3.0), 1e-5));
}

TEST_CASE("index norm is monotone in s") {
    auto g = make_omega_grid(512, 10.0);
    auto u = sample_omega(
        [](double w) { return cplx(std::exp(-0.7 * w * w), 0.2 / std::cosh(w - 1.0)); }, g);
    const SpectralFunction U = forward(u);
    double prev = hs_norm(U, 0.0);
    for (const double s : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double cur = hs_norm(U, s);
        CHECK(prev <= cur * (1.0 + 1e-15));
        prev = cur;
    }
}

TEST_CASE("spatial index-1 norm agrees with the spectral one") {
    auto g = make_omega_grid(4096, 12.0);
    auto u = sech_fn(g);
    const double spatial = h1_norm_spatial(u);
    const double spectral = hs_norm(forward(u), 1.0);
    CHECK_THAT(spatial, Catch::Matchers::WithinAbs(std::sqrt(8.0 / 3.0), 1e-5));
    CHECK(std::abs(spatial - spectral) <= 1e-6 * spectral);

    // a second family, complex-valued
    auto v = sample_omega(
        [](double w) { return cplx(1.0 / std::cosh(0.8 * (w + 0.5)), std::exp(-w * w)); }, g);
    CHECK(std::abs(h1_norm_spatial(v) - hs_norm(forward(v), 1.0)) <=
          1e-6 * hs_norm(forward(v), 1.0));

    auto zero = sample([](double) { return cplx(0.0, 0.0); }, g);
    CHECK(h1_norm_spatial(zero) == 0.0);
}

TEST_CASE("weighted right-hand-side norm") {
    auto g = make_omega_grid(4096, 12.0);

    auto one = sample([](double) { return cplx(1.0, 0.0); }, g);
    CHECK_THAT(l2r_norm(one), Catch::Matchers::WithinAbs(std::sqrt(4.0 / 3.0), 1e-10));

    auto zero = sample([](double) { return cplx(0.0, 0.0); }, g);
    CHECK(l2r_norm(zero) == 0.0);

    // integrable endpoint singularity: f = 1/sqrt(1-x^2) = cosh(w)
    auto singular = sample_omega([](double w) { return cplx(std::cosh(w), 0.0); }, g);
    CHECK_THAT(l2r_norm(singular), Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-9));
}

TEST_CASE("embedding constant values and monotone decay") {
    CHECK_THAT(embedding_constant(1.0), Catch::Matchers::WithinAbs(std::sqrt(0.5), 1e-13));
    CHECK_THAT(embedding_constant(1.5),
               Catch::Matchers::WithinAbs(0.5641895835477563, 1e-12));  // sqrt(1/pi)
    double prev = embedding_constant(1.0);
    for (const double s : {2.0, 4.0, 8.0}) {
        const double cur = embedding_constant(s);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(embedding_constant(0.5), std::domain_error);
    CHECK_THROWS_AS(embedding_constant(0.2), std::domain_error);
}

TEST_CASE("gamma kernel matches the standard library") {
    for (double s = 0.51; s <= 20.0; s += 0.37) {
        CHECK_THAT(detail::lanczos_gamma(s), Catch::Matchers::WithinRel(std::tgamma(s), 1e-13));
    }
}

TEST_CASE("sup-norm embedding on a sech family") {
    auto g = make_omega_grid(2048, 12.0);
    const std::vector<std::function<double(double)>> family = {
        [](double w) { return 1.0 / std::cosh(w); },
        [](double w) { return 1.0 / std::cosh(1.7 * (w - 0.8)); },
        [](double w) { return 0.6 / std::cosh(w + 1.5) - 0.4 / std::cosh(2.0 * w); },
        [](double w) { return std::tanh(w) / std::cosh(w); },
    };
    for (const auto& f1 : family) {
        auto u = sample_omega([&](double w) { return cplx(f1(w), 0.0); }, g);
        double sup = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) sup = std::max(sup, std::abs(u[j]));
        const SpectralFunction U = forward(u);
        for (const double s : {0.75, 1.0, 1.5})
            CHECK(sup <= embedding_constant(s) * hs_norm(U, s) + 1e-6);
    }
}

TEST_CASE("functions of finite index-1 norm have small boundary values") {
    auto g = make_omega_grid(2048, 12.0);
    const double L = g->half_width();
    for (const double a : {1.0, 1.3, 2.0}) {
        auto u = sample_omega([a](double w) { return cplx(1.0 / std::cosh(a * w), 0.0); }, g);
        const double h1 = hs_norm(forward(u), 1.0);
        const double edge = std::max(std::abs(u[0]), std::abs(u[u.size() - 1]));
        CHECK(edge <= 5.0 * h1 * std::exp(-L / 2.0));
    }
}

TEST_CASE("weighted duality inequality") {
    // |int f conj(g) dx| <= ||f||_{L2,r} ||g||_{L2~}: Cauchy-Schwarz with
    // the r and 1/r weights
    auto g = make_omega_grid(1024, 10.0);
    auto f = sample_omega([](double w) { return cplx(std::cos(w) * std::exp(-0.1 * w * w), 0.0); }, g);
    auto v = sample_omega([](double w) { return cplx(1.0 / std::cosh(0.9 * w), 0.1); }, g);
    // int f conj(g) dx = h sum f conj(g) sech^2
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::conj(v[j]) * g->weight(j);
    acc *= g->step();
    CHECK(std::abs(acc) <= l2r_norm(f) * hs_norm(forward(v), 0.0) * (1.0 + 1e-12));
}
