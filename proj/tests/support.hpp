#pragma once

#include <algorithm>
#include <cmath>

#include "hallmhd/field.hpp"
#include "hallmhd/norms.hpp"

namespace hallmhd::test {

inline double max_abs(const SpectralScalarField& f) {
    double m = 0.0;
    for (const Complex& z : f.coeffs()) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs(const SpectralVectorField& f) {
    return std::max({max_abs(f[0]), max_abs(f[1]), max_abs(f[2])});
}

inline double max_abs(const SpectralScalarField& a, const SpectralScalarField& b) { return max_abs(a - b); }
inline double max_abs(const SpectralVectorField& a, const SpectralVectorField& b) { return max_abs(a - b); }

inline double rel_l2(const SpectralVectorField& a, const SpectralVectorField& b) {
    const double den = std::max(l2_norm(a), l2_norm(b));
    return den > 0.0 ? l2_norm(a - b) / den : 0.0;
}

inline double rel_l2(const SpectralScalarField& a, const SpectralScalarField& b) {
    const double den = std::max(l2_norm(a), l2_norm(b));
    return den > 0.0 ? l2_norm(a - b) / den : 0.0;
}

}  // namespace hallmhd::test
