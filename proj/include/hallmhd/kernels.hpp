#pragma once

// Data-parallel loop kernels over the spectral lattice and the physical grid.
//
// Every kernel has a serial reference in kernels::serial and an OpenMP variant
// in kernels::parallel. Reductions in the parallel variant are deterministic:
// each slab of the outermost axis is summed serially into its own partial and
// the partials are combined in slab order, so the result does not depend on
// the thread count or scheduling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#ifdef HALLMHD_HAVE_OPENMP
#include <omp.h>
#endif

namespace hallmhd::kernels {

enum class Exec { Serial, Parallel };

/// Process-wide default used by the field operators.
Exec default_exec();
void set_default_exec(Exec exec);
int max_threads();

namespace serial {

template <class F>
void for_each_mode(int n, F&& f) {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3, ++idx) f(i1, i2, i3, idx);
}

// Same summation order as the parallel variant: slab partials, then slabs in order.
template <class F>
double sum_modes(int n, F&& f) {
    double total = 0.0;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1) {
        double acc = 0.0;
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3, ++idx) acc += f(i1, i2, i3, idx);
        total += acc;
    }
    return total;
}

template <class F>
void for_each_point(std::size_t count, F&& f) {
    for (std::size_t p = 0; p < count; ++p) f(p);
}

template <class F>
double max_over(std::size_t count, F&& f) {
    double m = 0.0;
    for (std::size_t p = 0; p < count; ++p) m = std::max(m, f(p));
    return m;
}

}  // namespace serial

namespace parallel {

template <class F>
void for_each_mode(int n, F&& f) {
    const std::size_t slab = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static)
    for (int i1 = 0; i1 < n; ++i1) {
        std::size_t idx = slab * i1;
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3, ++idx) f(i1, i2, i3, idx);
    }
}

template <class F>
double sum_modes(int n, F&& f) {
    const std::size_t slab = static_cast<std::size_t>(n) * n;
    std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i1 = 0; i1 < n; ++i1) {
        double acc = 0.0;
        std::size_t idx = slab * i1;
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3, ++idx) acc += f(i1, i2, i3, idx);
        partial[i1] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

template <class F>
void for_each_point(std::size_t count, F&& f) {
    const auto signed_count = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < signed_count; ++p) f(static_cast<std::size_t>(p));
}

// max is order independent, so a plain reduction stays deterministic.
template <class F>
double max_over(std::size_t count, F&& f) {
    const auto signed_count = static_cast<std::ptrdiff_t>(count);
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t p = 0; p < signed_count; ++p)
        m = std::max(m, f(static_cast<std::size_t>(p)));
    return m;
}

}  // namespace parallel

template <class F>
void for_each_mode(Exec exec, int n, F&& f) {
    if (exec == Exec::Parallel)
        parallel::for_each_mode(n, f);
    else
        serial::for_each_mode(n, f);
}

template <class F>
double sum_modes(Exec exec, int n, F&& f) {
    return exec == Exec::Parallel ? parallel::sum_modes(n, f) : serial::sum_modes(n, f);
}

template <class F>
void for_each_point(Exec exec, std::size_t count, F&& f) {
    if (exec == Exec::Parallel)
        parallel::for_each_point(count, f);
    else
        serial::for_each_point(count, f);
}

template <class F>
double max_over(Exec exec, std::size_t count, F&& f) {
    return exec == Exec::Parallel ? parallel::max_over(count, f) : serial::max_over(count, f);
}

}  // namespace hallmhd::kernels
