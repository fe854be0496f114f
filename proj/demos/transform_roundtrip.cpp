// Round-trips sqrt(1-x^2) through the interval transform and prints the
// spectrum against the explicit image pi sech(pi xi).

#include <cmath>
#include <cstdio>

#include "prandtl/prandtl.hpp"

int main() {
    using namespace prandtl;
    auto grid = make_omega_grid(1024, 12.0);
    auto u = sample_omega([](double w) { return std::complex<double>(1.0 / std::cosh(w), 0.0); },
                          grid);

    const SpectralFunction U = forward(u);
    const GridFunction back = inverse(U);

    double roundtrip = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        roundtrip = std::max(roundtrip, std::abs(back[j] - u[j]));
    std::printf("roundtrip error   %.3e\n", roundtrip);
    std::printf("pairing <u,u>     %.12f (exact 2)\n", pairing(u, u).real());

    const double pi = 3.14159265358979323846;
    std::printf("\n   xi        U(xi)      pi*sech(pi*xi)\n");
    for (std::size_t k = U.size() / 2; k < U.size() / 2 + 8; ++k) {
        const double xi = U.grid()->xi(k);
        std::printf("%7.4f   %9.6f   %9.6f\n", xi, U[k].real(), pi / std::cosh(pi * xi));
    }
    return 0;
}
