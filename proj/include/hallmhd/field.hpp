#pragma once

#include <array>
#include <span>

#include "hallmhd/common.hpp"
#include "hallmhd/grid.hpp"

namespace hallmhd {

/// Fourier series coefficients of a real scalar field on a periodic grid.
///
/// Convention: f(x) = sum_k c_k exp(i k.x), so that
/// integral |f|^2 dx = L^3 * sum_k |c_k|^2 (Parseval). The continuum
/// transform sample under a(x) = integral exp(i x.xi) a^(xi) dxi is
/// c_k / dk^3.
class SpectralScalarField {
  public:
    SpectralScalarField() = default;
    explicit SpectralScalarField(GridSpec grid);
    SpectralScalarField(GridSpec grid, CoeffArray coeffs);

    const GridSpec& grid() const { return grid_; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    const CoeffArray& data() const { return coeffs_; }
    CoeffArray& data() { return coeffs_; }

    Complex& at(int i1, int i2, int i3) { return coeffs_[grid_.index(i1, i2, i3)]; }
    const Complex& at(int i1, int i2, int i3) const { return coeffs_[grid_.index(i1, i2, i3)]; }

    SpectralScalarField& operator+=(const SpectralScalarField& other);
    SpectralScalarField& operator-=(const SpectralScalarField& other);
    SpectralScalarField& operator*=(double s);

    friend SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) { return a += b; }
    friend SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) { return a -= b; }
    friend SpectralScalarField operator*(double s, SpectralScalarField a) { return a *= s; }
    friend SpectralScalarField operator-(SpectralScalarField a) { return a *= -1.0; }

  private:
    GridSpec grid_;
    CoeffArray coeffs_;
};

/// Three components sharing one grid.
class SpectralVectorField {
  public:
    SpectralVectorField() = default;
    explicit SpectralVectorField(const GridSpec& grid);
    SpectralVectorField(SpectralScalarField c1, SpectralScalarField c2, SpectralScalarField c3);

    const GridSpec& grid() const { return comp_[0].grid(); }
    SpectralScalarField& operator[](int a) { return comp_[a]; }
    const SpectralScalarField& operator[](int a) const { return comp_[a]; }

    SpectralVectorField& operator+=(const SpectralVectorField& other);
    SpectralVectorField& operator-=(const SpectralVectorField& other);
    SpectralVectorField& operator*=(double s);

    friend SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) { return a += b; }
    friend SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) { return a -= b; }
    friend SpectralVectorField operator*(double s, SpectralVectorField a) { return a *= s; }
    friend SpectralVectorField operator-(SpectralVectorField a) { return a *= -1.0; }

  private:
    std::array<SpectralScalarField, 3> comp_;
};

/// Real samples on the physical grid, same flat ordering as the lattice.
struct PhysicalScalarField {
    GridSpec grid;
    RealArray values;
};

struct PhysicalVectorField {
    std::array<PhysicalScalarField, 3> comp;
    const GridSpec& grid() const { return comp[0].grid; }
    PhysicalScalarField& operator[](int a) { return comp[a]; }
    const PhysicalScalarField& operator[](int a) const { return comp[a]; }
};

PhysicalScalarField make_physical(const GridSpec& grid);
PhysicalVectorField make_physical_vector(const GridSpec& grid);

/// Largest |c(k) - conj(c(-k))| relative to the largest |c|; 0 for a zero field.
double hermitian_defect(const SpectralScalarField& field);

}  // namespace hallmhd
