#include "hallmhd/operators.hpp"

#include <cmath>

#include "hallmhd/fft.hpp"
#include "hallmhd/kernels.hpp"

namespace hallmhd {

namespace {

using kernels::default_exec;

const Complex kI(0.0, 1.0);

void check_axis(int axis) {
    if (axis < 0 || axis > 2) throw ValidationError("derivative axis must be 0, 1 or 2");
}

int axis_index(int a, int i1, int i2, int i3) { return a == 0 ? i1 : (a == 1 ? i2 : i3); }

}  // namespace

SpectralScalarField derivative(const SpectralScalarField& field, int axis) {
    check_axis(axis);
    const GridSpec& g = field.grid();
    SpectralScalarField out(g);
    const Complex* src = field.data().data();
    Complex* dst = out.data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        dst[idx] = kI * g.k_deriv(axis_index(axis, i1, i2, i3)) * src[idx];
    });
    return out;
}

SpectralScalarField derivative(const SpectralScalarField& field, const std::array<int, 3>& beta) {
    const GridSpec& g = field.grid();
    for (int b : beta)
        if (b < 0) throw ValidationError("multi-index entries must be non-negative");
    const int order = beta[0] + beta[1] + beta[2];
    // i^order * k1^b1 k2^b2 k3^b3
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = ipow[order % 4];
    SpectralScalarField out(g);
    const Complex* src = field.data().data();
    Complex* dst = out.data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        double sym = 1.0;
        const int ii[3] = {i1, i2, i3};
        for (int a = 0; a < 3; ++a)
            for (int p = 0; p < beta[a]; ++p) sym *= g.k_deriv(ii[a]);
        dst[idx] = phase * sym * src[idx];
    });
    return out;
}

SpectralVectorField derivative(const SpectralVectorField& field, const std::array<int, 3>& beta) {
    return SpectralVectorField(derivative(field[0], beta), derivative(field[1], beta),
                               derivative(field[2], beta));
}

SpectralScalarField divergence(const SpectralVectorField& field) {
    const GridSpec& g = field.grid();
    SpectralScalarField out(g);
    const Complex* u1 = field[0].data().data();
    const Complex* u2 = field[1].data().data();
    const Complex* u3 = field[2].data().data();
    Complex* dst = out.data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        dst[idx] = kI * (g.k_deriv(i1) * u1[idx] + g.k_deriv(i2) * u2[idx] + g.k_deriv(i3) * u3[idx]);
    });
    return out;
}

SpectralVectorField curl(const SpectralVectorField& field) {
    const GridSpec& g = field.grid();
    SpectralVectorField out(g);
    const Complex* u1 = field[0].data().data();
    const Complex* u2 = field[1].data().data();
    const Complex* u3 = field[2].data().data();
    Complex* w1 = out[0].data().data();
    Complex* w2 = out[1].data().data();
    Complex* w3 = out[2].data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        const double k1 = g.k_deriv(i1), k2 = g.k_deriv(i2), k3 = g.k_deriv(i3);
        w1[idx] = kI * (k2 * u3[idx] - k3 * u2[idx]);
        w2[idx] = kI * (k3 * u1[idx] - k1 * u3[idx]);
        w3[idx] = kI * (k1 * u2[idx] - k2 * u1[idx]);
    });
    return out;
}

SpectralVectorField gradient(const SpectralScalarField& field) {
    return SpectralVectorField(derivative(field, 0), derivative(field, 1), derivative(field, 2));
}

SpectralScalarField laplacian(const SpectralScalarField& field) {
    const GridSpec& g = field.grid();
    SpectralScalarField out(g);
    const Complex* src = field.data().data();
    Complex* dst = out.data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        dst[idx] = -g.k_squared(i1, i2, i3) * src[idx];
    });
    return out;
}

SpectralVectorField laplacian(const SpectralVectorField& field) {
    return SpectralVectorField(laplacian(field[0]), laplacian(field[1]), laplacian(field[2]));
}

SpectralScalarField fractional_power(const SpectralScalarField& field, double gamma) {
    if (gamma == 0.0) return field;
    const GridSpec& g = field.grid();
    SpectralScalarField out(g);
    const Complex* src = field.data().data();
    Complex* dst = out.data().data();
    const double half = 0.5 * gamma;
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        const double k2 = g.k_squared(i1, i2, i3);
        dst[idx] = k2 > 0.0 ? std::pow(k2, half) * src[idx] : Complex(0.0, 0.0);
    });
    return out;
}

SpectralVectorField fractional_power(const SpectralVectorField& field, double gamma) {
    return SpectralVectorField(fractional_power(field[0], gamma), fractional_power(field[1], gamma),
                               fractional_power(field[2], gamma));
}

SpectralScalarField radial_multiplier(const SpectralScalarField& field,
                                      const std::function<double(double)>& symbol) {
    const GridSpec& g = field.grid();
    SpectralScalarField out(g);
    const Complex* src = field.data().data();
    Complex* dst = out.data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        dst[idx] = symbol(std::sqrt(g.k_squared(i1, i2, i3))) * src[idx];
    });
    return out;
}

SpectralVectorField radial_multiplier(const SpectralVectorField& field,
                                      const std::function<double(double)>& symbol) {
    return SpectralVectorField(radial_multiplier(field[0], symbol), radial_multiplier(field[1], symbol),
                               radial_multiplier(field[2], symbol));
}

SpectralVectorField leray_project(const SpectralVectorField& field) {
    const GridSpec& g = field.grid();
    SpectralVectorField out = field;
    Complex* u1 = out[0].data().data();
    Complex* u2 = out[1].data().data();
    Complex* u3 = out[2].data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        const double k1 = g.k_deriv(i1), k2 = g.k_deriv(i2), k3 = g.k_deriv(i3);
        const double kk = k1 * k1 + k2 * k2 + k3 * k3;
        if (kk == 0.0) return;
        const Complex kdotu = (k1 * u1[idx] + k2 * u2[idx] + k3 * u3[idx]) / kk;
        u1[idx] -= k1 * kdotu;
        u2[idx] -= k2 * kdotu;
        u3[idx] -= k3 * kdotu;
    });
    return out;
}

void dealias(SpectralScalarField& field) {
    const GridSpec& g = field.grid();
    Complex* c = field.data().data();
    kernels::for_each_mode(default_exec(), g.n(), [&](int i1, int i2, int i3, std::size_t idx) {
        if (!g.mode_in_band(i1, i2, i3)) c[idx] = Complex(0.0, 0.0);
    });
}

void dealias(SpectralVectorField& field) {
    for (int a = 0; a < 3; ++a) dealias(field[a]);
}

SpectralScalarField pointwise_product(const SpectralScalarField& a, const SpectralScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "pointwise_product");
    const PhysicalScalarField pa = to_physical(a);
    const PhysicalScalarField pb = to_physical(b);
    PhysicalScalarField prod = make_physical(a.grid());
    const double* x = pa.values.data();
    const double* y = pb.values.data();
    double* z = prod.values.data();
    kernels::for_each_point(default_exec(), prod.values.size(), [=](std::size_t p) { z[p] = x[p] * y[p]; });
    SpectralScalarField out = to_spectral(prod);
    dealias(out);
    return out;
}

SpectralVectorField pointwise_cross(const SpectralVectorField& a, const SpectralVectorField& b) {
    require_same_grid(a.grid(), b.grid(), "pointwise_cross");
    const PhysicalVectorField pa = to_physical(a);
    const PhysicalVectorField pb = to_physical(b);
    PhysicalVectorField out = make_physical_vector(a.grid());
    phys::cross(pa, pb, out);
    return phys::to_spectral_dealiased(out);
}

SpectralVectorField advect(const SpectralVectorField& u, const SpectralVectorField& w) {
    require_same_grid(u.grid(), w.grid(), "advect");
    const PhysicalVectorField pu = to_physical(u);
    const auto grad_w = phys::gradient_tensor(w);
    PhysicalVectorField out = make_physical_vector(u.grid());
    phys::advect(pu, grad_w, out);
    return phys::to_spectral_dealiased(out);
}

namespace phys {

void advect(const PhysicalVectorField& u, const std::array<PhysicalVectorField, 3>& grad_w,
            PhysicalVectorField& out, double scale, bool accumulate) {
    const std::size_t count = u.grid().size();
    const double* u1 = u[0].values.data();
    const double* u2 = u[1].values.data();
    const double* u3 = u[2].values.data();
    for (int i = 0; i < 3; ++i) {
        const double* d1 = grad_w[i][0].values.data();
        const double* d2 = grad_w[i][1].values.data();
        const double* d3 = grad_w[i][2].values.data();
        double* o = out[i].values.data();
        if (accumulate)
            kernels::for_each_point(default_exec(), count, [=](std::size_t p) {
                o[p] += scale * (u1[p] * d1[p] + u2[p] * d2[p] + u3[p] * d3[p]);
            });
        else
            kernels::for_each_point(default_exec(), count, [=](std::size_t p) {
                o[p] = scale * (u1[p] * d1[p] + u2[p] * d2[p] + u3[p] * d3[p]);
            });
    }
}

void cross(const PhysicalVectorField& a, const PhysicalVectorField& b, PhysicalVectorField& out,
           double scale, bool accumulate) {
    const std::size_t count = a.grid().size();
    const double* a1 = a[0].values.data();
    const double* a2 = a[1].values.data();
    const double* a3 = a[2].values.data();
    const double* b1 = b[0].values.data();
    const double* b2 = b[1].values.data();
    const double* b3 = b[2].values.data();
    double* o1 = out[0].values.data();
    double* o2 = out[1].values.data();
    double* o3 = out[2].values.data();
    if (accumulate)
        kernels::for_each_point(default_exec(), count, [=](std::size_t p) {
            o1[p] += scale * (a2[p] * b3[p] - a3[p] * b2[p]);
            o2[p] += scale * (a3[p] * b1[p] - a1[p] * b3[p]);
            o3[p] += scale * (a1[p] * b2[p] - a2[p] * b1[p]);
        });
    else
        kernels::for_each_point(default_exec(), count, [=](std::size_t p) {
            o1[p] = scale * (a2[p] * b3[p] - a3[p] * b2[p]);
            o2[p] = scale * (a3[p] * b1[p] - a1[p] * b3[p]);
            o3[p] = scale * (a1[p] * b2[p] - a2[p] * b1[p]);
        });
}

std::array<PhysicalVectorField, 3> gradient_tensor(const SpectralVectorField& w) {
    const GridSpec& g = w.grid();
    std::array<SpectralScalarField, 9> spectral;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) spectral[3 * i + j] = derivative(w[i], j);
    std::array<PhysicalVectorField, 3> out{make_physical_vector(g), make_physical_vector(g),
                                           make_physical_vector(g)};
    std::array<const Complex*, 9> in{};
    std::array<double*, 9> dst{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            in[3 * i + j] = spectral[3 * i + j].data().data();
            dst[3 * i + j] = out[i][j].values.data();
        }
    fft_detail::inverse_real_batch(g, in, dst);
    return out;
}

PhysicalVectorField curl_from_gradient(const std::array<PhysicalVectorField, 3>& grad_w) {
    const GridSpec& g = grad_w[0].grid();
    PhysicalVectorField out = make_physical_vector(g);
    const std::size_t count = g.size();
    // grad_w[i][j] = d_j w_i
    const double* d2w3 = grad_w[2][1].values.data();
    const double* d3w2 = grad_w[1][2].values.data();
    const double* d3w1 = grad_w[0][2].values.data();
    const double* d1w3 = grad_w[2][0].values.data();
    const double* d1w2 = grad_w[1][0].values.data();
    const double* d2w1 = grad_w[0][1].values.data();
    double* o1 = out[0].values.data();
    double* o2 = out[1].values.data();
    double* o3 = out[2].values.data();
    kernels::for_each_point(default_exec(), count, [=](std::size_t p) {
        o1[p] = d2w3[p] - d3w2[p];
        o2[p] = d3w1[p] - d1w3[p];
        o3[p] = d1w2[p] - d2w1[p];
    });
    return out;
}

SpectralVectorField to_spectral_dealiased(const PhysicalVectorField& field) {
    SpectralVectorField out = to_spectral(field);
    dealias(out);
    return out;
}

}  // namespace phys

}  // namespace hallmhd
