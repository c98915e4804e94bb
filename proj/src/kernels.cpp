#include "hallmhd/kernels.hpp"

#include <atomic>

namespace hallmhd::kernels {

namespace {
std::atomic<Exec> g_exec{
#ifdef HALLMHD_HAVE_OPENMP
    Exec::Parallel
#else
    Exec::Serial
#endif
};
}  // namespace

Exec default_exec() { return g_exec.load(std::memory_order_relaxed); }

void set_default_exec(Exec exec) { g_exec.store(exec, std::memory_order_relaxed); }

int max_threads() {
#ifdef HALLMHD_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace hallmhd::kernels
