#include "hallmhd/norms.hpp"

#include <cmath>

#include "hallmhd/fft.hpp"
#include "hallmhd/kernels.hpp"

namespace hallmhd {

using kernels::default_exec;

double inner_product(const SpectralScalarField& a, const SpectralScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "inner_product");
    const Complex* x = a.data().data();
    const Complex* y = b.data().data();
    const double s = kernels::sum_modes(default_exec(), a.grid().n(), [=](int, int, int, std::size_t idx) {
        return x[idx].real() * y[idx].real() + x[idx].imag() * y[idx].imag();
    });
    return a.grid().volume() * s;
}

double inner_product(const SpectralVectorField& a, const SpectralVectorField& b) {
    return inner_product(a[0], b[0]) + inner_product(a[1], b[1]) + inner_product(a[2], b[2]);
}

double l2_norm(const SpectralScalarField& field) { return sobolev_norm(field, 0.0); }

double l2_norm(const SpectralVectorField& field) { return sobolev_norm(field, 0.0); }

namespace {

double sobolev_squared(const SpectralScalarField& field, double s) {
    if (s < -1.0) throw ValidationError("sobolev_norm supports s >= -1");
    const GridSpec& g = field.grid();
    const Complex* c = field.data().data();
    const double sum = kernels::sum_modes(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        const double w = s == 0.0 ? 1.0 : std::pow(1.0 + g.k_squared(i1, i2, i3), s);
        return w * std::norm(c[idx]);
    });
    return g.volume() * sum;
}

}  // namespace

double sobolev_norm(const SpectralScalarField& field, double s) {
    return std::sqrt(sobolev_squared(field, s));
}

double sobolev_norm(const SpectralVectorField& field, double s) {
    return std::sqrt(sobolev_squared(field[0], s) + sobolev_squared(field[1], s) + sobolev_squared(field[2], s));
}

double spectral_l1(const SpectralScalarField& field) {
    const Complex* c = field.data().data();
    return kernels::sum_modes(default_exec(), field.grid().n(),
                              [=](int, int, int, std::size_t idx) { return std::abs(c[idx]); });
}

double spectral_l1(const SpectralVectorField& field) {
    const Complex* c1 = field[0].data().data();
    const Complex* c2 = field[1].data().data();
    const Complex* c3 = field[2].data().data();
    return kernels::sum_modes(default_exec(), field.grid().n(), [=](int, int, int, std::size_t idx) {
        return std::sqrt(std::norm(c1[idx]) + std::norm(c2[idx]) + std::norm(c3[idx]));
    });
}

double linf_norm(const SpectralScalarField& field) {
    const PhysicalScalarField p = to_physical(field);
    const double* v = p.values.data();
    return kernels::max_over(default_exec(), p.values.size(), [=](std::size_t i) { return std::abs(v[i]); });
}

double linf_norm(const PhysicalVectorField& field) {
    const double* a = field[0].values.data();
    const double* b = field[1].values.data();
    const double* c = field[2].values.data();
    return kernels::max_over(default_exec(), field.grid().size(), [=](std::size_t i) {
        return std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
    });
}

double linf_norm(const SpectralVectorField& field) { return linf_norm(to_physical(field)); }

double physical_l2_squared(const PhysicalScalarField& field) {
    const GridSpec& g = field.grid;
    const double* v = field.values.data();
    const double sum = kernels::sum_modes(default_exec(), g.n(),
                                          [=](int, int, int, std::size_t idx) { return v[idx] * v[idx]; });
    return sum * g.volume() / static_cast<double>(g.size());
}

}  // namespace hallmhd
