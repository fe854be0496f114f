// Solves the circulation problem for an elliptic planform, p = p0 sqrt(1-x^2)
// with unit angle of attack, and compares with the closed form
// u = 2 p0/(2+p0) sqrt(1-x^2).

#include <cmath>
#include <cstdio>

#include "prandtl/prandtl.hpp"

int main() {
    using namespace prandtl;
    const double p0 = 2.0;
    auto grid = make_omega_grid(4096, 16.0);
    ProblemSpec spec(CoefficientSpec::elliptic(p0), grid, [](double) { return 1.0; });

    auto [u, report] = solve_weak(spec);

    const double amplitude = 2.0 * p0 / (2.0 + p0);
    double deviation = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double exact = amplitude / std::cosh(grid->omega(j));
        deviation = std::max(deviation, std::abs(u[j] - std::complex<double>(exact, 0.0)));
    }

    std::printf("CG iterations     %zu\n", report.iterations);
    std::printf("final residual    %.3e\n", report.residual);
    std::printf("||u|| (s=1)       %.8f\n", report.norms.h_one);
    std::printf("closed-form dev   %.3e\n", deviation);
    for (const auto& b : report.bounds)
        std::printf("bound %-26s %12.6f <= %12.6f  %s\n", b.name.c_str(), b.lhs, b.rhs,
                    b.pass ? "pass" : "FAIL");
    return deviation < 1e-6 ? 0 : 1;
}
