#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hallmhd/common.hpp"

namespace hallmhd {

/// Periodic cube [0, L)^3 sampled at n points per axis.
///
/// Lattice index i in [0, n) carries the integer mode m(i) in (-n/2, n/2]
/// (FFT storage order: 0, 1, ..., n/2, -n/2+1, ..., -1). Flat storage is
/// row-major with axis 1 slowest: idx = (i1 * n + i2) * n + i3. Physical
/// samples use the same ordering with x_a = i_a * L / n.
class GridSpec {
  public:
    GridSpec() = default;

    int n() const { return n_; }
    double box_side() const { return box_side_; }
    double dk() const { return dk_; }
    double dx() const { return box_side_ / n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
    /// Physical volume of the box, L^3.
    double volume() const { return box_side_ * box_side_ * box_side_; }

    int mode(int i) const { return i <= n_ / 2 ? i : i - n_; }
    bool is_nyquist(int i) const { return i == n_ / 2; }
    /// True wavenumber dk * m(i), Nyquist included.
    double k(int i) const { return k_[i]; }
    /// Wavenumber used by spectral derivatives: Nyquist entry is zero.
    double k_deriv(int i) const { return k_deriv_[i]; }
    /// 2/3 rule: mode survives iff 3|m| < n along the axis (strict, so no
    /// product of two kept modes aliases back into the band).
    bool in_dealias_band(int i) const { return keep_[i] != 0; }
    /// Largest |m| retained by the 2/3 rule.
    int dealias_cutoff() const { return (n_ - 1) / 3; }

    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
    }
    double k_squared(int i1, int i2, int i3) const {
        return k_[i1] * k_[i1] + k_[i2] * k_[i2] + k_[i3] * k_[i3];
    }
    bool mode_in_band(int i1, int i2, int i3) const {
        return keep_[i1] && keep_[i2] && keep_[i3];
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.n_ == b.n_ && a.box_side_ == b.box_side_;
    }

    friend GridSpec make_grid(int n, double box_side);

  private:
    int n_ = 0;
    double box_side_ = 0.0;
    double dk_ = 0.0;
    std::vector<double> k_;
    std::vector<double> k_deriv_;
    std::vector<char> keep_;
};

/// Rejects odd n, n < 8 and non-positive box sides.
GridSpec make_grid(int n, double box_side);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace hallmhd
