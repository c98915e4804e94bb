#include "hallmhd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "hallmhd/kernels.hpp"

namespace hallmhd {

namespace {

// FFTW_ESTIMATE keeps plan selection, and therefore every rounding pattern,
// identical from run to run.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

std::mutex g_plan_mutex;

const PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

#if defined(HALLMHD_HAVE_FFTW_OMP)
    static bool threads_ready = false;
    if (!threads_ready) {
        fftw_init_threads();
        threads_ready = true;
    }
    fftw_plan_with_nthreads(kernels::max_threads());
#endif
    const std::size_t count = static_cast<std::size_t>(n) * n * n;
    CoeffArray a(count), b(count);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    p.forward = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(n, p).first->second;
}

struct Scratch {
    CoeffArray in;
    CoeffArray out;
    void ensure(std::size_t count) {
        if (in.size() < count) {
            in.resize(count);
            out.resize(count);
        }
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

void execute(fftw_plan plan, Complex* in, Complex* out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in), reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

namespace fft_detail {

void inverse_real_batch(const GridSpec& grid, std::span<const Complex* const> in,
                        std::span<double* const> out) {
    const std::size_t count = grid.size();
    const PlanPair& plans = plans_for(grid.n());
    Scratch& s = scratch();
    s.ensure(count);
    const auto exec = kernels::default_exec();
    const Complex I(0.0, 1.0);

    for (std::size_t f = 0; f < in.size(); f += 2) {
        Complex* z = s.in.data();
        const Complex* a = in[f];
        if (f + 1 < in.size()) {
            const Complex* b = in[f + 1];
            kernels::for_each_point(exec, count, [=](std::size_t p) { z[p] = a[p] + I * b[p]; });
        } else {
            kernels::for_each_point(exec, count, [=](std::size_t p) { z[p] = a[p]; });
        }
        execute(plans.backward, s.in.data(), s.out.data());
        const Complex* r = s.out.data();
        double* oa = out[f];
        if (f + 1 < in.size()) {
            double* ob = out[f + 1];
            kernels::for_each_point(exec, count, [=](std::size_t p) {
                oa[p] = r[p].real();
                ob[p] = r[p].imag();
            });
        } else {
            kernels::for_each_point(exec, count, [=](std::size_t p) { oa[p] = r[p].real(); });
        }
    }
}

void forward_real_batch(const GridSpec& grid, std::span<const double* const> in,
                        std::span<Complex* const> out) {
    const int n = grid.n();
    const std::size_t count = grid.size();
    const PlanPair& plans = plans_for(n);
    Scratch& s = scratch();
    s.ensure(count);
    const auto exec = kernels::default_exec();
    const double inv_count = 1.0 / static_cast<double>(count);

    for (std::size_t f = 0; f < in.size(); f += 2) {
        Complex* z = s.in.data();
        const double* a = in[f];
        const bool pair = f + 1 < in.size();
        if (pair) {
            const double* b = in[f + 1];
            kernels::for_each_point(exec, count, [=](std::size_t p) { z[p] = Complex(a[p], b[p]); });
        } else {
            kernels::for_each_point(exec, count, [=](std::size_t p) { z[p] = Complex(a[p], 0.0); });
        }
        execute(plans.forward, s.in.data(), s.out.data());
        const Complex* Z = s.out.data();
        Complex* oa = out[f];
        Complex* ob = pair ? out[f + 1] : nullptr;
        kernels::for_each_mode(exec, n, [=](int i1, int i2, int i3, std::size_t idx) {
            const std::size_t mirror =
                (static_cast<std::size_t>((n - i1) % n) * n + (n - i2) % n) * n + (n - i3) % n;
            const Complex zk = Z[idx] * inv_count;
            const Complex zm = std::conj(Z[mirror]) * inv_count;
            oa[idx] = 0.5 * (zk + zm);
            if (ob != nullptr) ob[idx] = Complex(0.0, -0.5) * (zk - zm);
        });
    }
}

}  // namespace fft_detail

SpectralScalarField to_spectral(const GridSpec& grid, std::span<const double> samples) {
    if (samples.size() != grid.size())
        throw ValidationError("sample count does not match grid size");
    SpectralScalarField out(grid);
    const double* in[] = {samples.data()};
    Complex* dst[] = {out.data().data()};
    fft_detail::forward_real_batch(grid, in, dst);
    return out;
}

SpectralScalarField to_spectral(const PhysicalScalarField& field) {
    return to_spectral(field.grid, std::span<const double>(field.values.data(), field.values.size()));
}

PhysicalScalarField to_physical(const SpectralScalarField& field) {
    PhysicalScalarField out = make_physical(field.grid());
    const Complex* in[] = {field.data().data()};
    double* dst[] = {out.values.data()};
    fft_detail::inverse_real_batch(field.grid(), in, dst);
    return out;
}

SpectralVectorField to_spectral(const PhysicalVectorField& field) {
    const GridSpec& g = field.grid();
    for (int a = 0; a < 3; ++a)
        if (field[a].values.size() != g.size())
            throw ValidationError("sample count does not match grid size");
    SpectralVectorField out(g);
    const double* in[] = {field[0].values.data(), field[1].values.data(), field[2].values.data()};
    Complex* dst[] = {out[0].data().data(), out[1].data().data(), out[2].data().data()};
    fft_detail::forward_real_batch(g, in, dst);
    return out;
}

PhysicalVectorField to_physical(const SpectralVectorField& field) {
    const GridSpec& g = field.grid();
    PhysicalVectorField out = make_physical_vector(g);
    const Complex* in[] = {field[0].data().data(), field[1].data().data(), field[2].data().data()};
    double* dst[] = {out[0].values.data(), out[1].values.data(), out[2].values.data()};
    fft_detail::inverse_real_batch(g, in, dst);
    return out;
}

}  // namespace hallmhd
