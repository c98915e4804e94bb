#include "hallmhd/field.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/kernels.hpp"

namespace hallmhd {

SpectralScalarField::SpectralScalarField(GridSpec grid)
    : grid_(std::move(grid)), coeffs_(grid_.size(), Complex(0.0, 0.0)) {}

SpectralScalarField::SpectralScalarField(GridSpec grid, CoeffArray coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size())
        throw ValidationError("coefficient count does not match grid");
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& other) {
    require_same_grid(grid_, other.grid_, "operator+=");
    const Complex* src = other.coeffs_.data();
    Complex* dst = coeffs_.data();
    kernels::for_each_point(kernels::default_exec(), coeffs_.size(),
                            [=](std::size_t p) { dst[p] += src[p]; });
    return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& other) {
    require_same_grid(grid_, other.grid_, "operator-=");
    const Complex* src = other.coeffs_.data();
    Complex* dst = coeffs_.data();
    kernels::for_each_point(kernels::default_exec(), coeffs_.size(),
                            [=](std::size_t p) { dst[p] -= src[p]; });
    return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double s) {
    Complex* dst = coeffs_.data();
    kernels::for_each_point(kernels::default_exec(), coeffs_.size(),
                            [=](std::size_t p) { dst[p] *= s; });
    return *this;
}

SpectralVectorField::SpectralVectorField(const GridSpec& grid)
    : comp_{SpectralScalarField(grid), SpectralScalarField(grid), SpectralScalarField(grid)} {}

SpectralVectorField::SpectralVectorField(SpectralScalarField c1, SpectralScalarField c2,
                                         SpectralScalarField c3)
    : comp_{std::move(c1), std::move(c2), std::move(c3)} {
    require_same_grid(comp_[0].grid(), comp_[1].grid(), "SpectralVectorField");
    require_same_grid(comp_[0].grid(), comp_[2].grid(), "SpectralVectorField");
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& other) {
    for (int a = 0; a < 3; ++a) comp_[a] += other.comp_[a];
    return *this;
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& other) {
    for (int a = 0; a < 3; ++a) comp_[a] -= other.comp_[a];
    return *this;
}

SpectralVectorField& SpectralVectorField::operator*=(double s) {
    for (auto& c : comp_) c *= s;
    return *this;
}

PhysicalScalarField make_physical(const GridSpec& grid) {
    return PhysicalScalarField{grid, RealArray(grid.size(), 0.0)};
}

PhysicalVectorField make_physical_vector(const GridSpec& grid) {
    return PhysicalVectorField{{make_physical(grid), make_physical(grid), make_physical(grid)}};
}

double hermitian_defect(const SpectralScalarField& field) {
    const GridSpec& g = field.grid();
    const int n = g.n();
    double defect = 0.0;
    double scale = 0.0;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
                const Complex c = field.at(i1, i2, i3);
                const Complex partner = field.at((n - i1) % n, (n - i2) % n, (n - i3) % n);
                defect = std::max(defect, std::abs(c - std::conj(partner)));
                scale = std::max(scale, std::abs(c));
            }
    return scale > 0.0 ? defect / scale : 0.0;
}

}  // namespace hallmhd
