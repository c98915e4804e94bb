#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

namespace hallmhd {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Precondition or configuration violation. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// 64-byte aligned storage so FFTW plans can be reused across arrays.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAllocator() noexcept = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

    T* allocate(std::size_t count) {
        std::size_t bytes = count * sizeof(T);
        bytes = (bytes + alignment - 1) / alignment * alignment;
        if (bytes == 0) bytes = alignment;
        void* p = std::aligned_alloc(alignment, bytes);
        if (p == nullptr) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using CoeffArray = std::vector<Complex, AlignedAllocator<Complex>>;
using RealArray = std::vector<double, AlignedAllocator<double>>;

}  // namespace hallmhd
