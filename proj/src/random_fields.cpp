#include "hallmhd/random_fields.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include "hallmhd/norms.hpp"
#include "hallmhd/operators.hpp"

namespace hallmhd {

SpectralScalarField random_scalar_field(const GridSpec& grid, std::uint64_t seed, double l2, int max_mode,
                                        bool mean_free) {
    const int n = grid.n();
    const int cutoff = max_mode < 0 ? grid.dealias_cutoff() : max_mode;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    SpectralScalarField raw(grid);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
                const double re = normal(rng);
                const double im = normal(rng);
                raw.at(i1, i2, i3) = Complex(re, im);
            }

    SpectralScalarField out(grid);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
                const bool keep = std::abs(grid.mode(i1)) <= cutoff && std::abs(grid.mode(i2)) <= cutoff &&
                                  std::abs(grid.mode(i3)) <= cutoff && !grid.is_nyquist(i1) &&
                                  !grid.is_nyquist(i2) && !grid.is_nyquist(i3);
                if (!keep) continue;
                const Complex partner = raw.at((n - i1) % n, (n - i2) % n, (n - i3) % n);
                out.at(i1, i2, i3) = 0.5 * (raw.at(i1, i2, i3) + std::conj(partner));
            }
    if (mean_free) out.at(0, 0, 0) = Complex(0.0, 0.0);

    const double norm = l2_norm(out);
    if (norm > 0.0) out *= l2 / norm;
    return out;
}

SpectralVectorField random_vector_field(const GridSpec& grid, std::uint64_t seed, double l2, int max_mode) {
    SpectralVectorField out(random_scalar_field(grid, seed * 3 + 0, 1.0, max_mode),
                            random_scalar_field(grid, seed * 3 + 1, 1.0, max_mode),
                            random_scalar_field(grid, seed * 3 + 2, 1.0, max_mode));
    const double norm = l2_norm(out);
    if (norm > 0.0) out *= l2 / norm;
    return out;
}

SpectralVectorField random_solenoidal_field(const GridSpec& grid, std::uint64_t seed, double l2,
                                            int max_mode) {
    SpectralVectorField out = leray_project(random_vector_field(grid, seed, 1.0, max_mode));
    const double norm = l2_norm(out);
    if (norm > 0.0) out *= l2 / norm;
    return out;
}

}  // namespace hallmhd
