#include "hallmhd/grid.hpp"

#include <cmath>
#include <string>

namespace hallmhd {

GridSpec make_grid(int n, double box_side) {
    if (n < 8 || n % 2 != 0)
        throw ValidationError("grid size n must be even and >= 8, got " + std::to_string(n));
    if (!(box_side > 0.0) || !std::isfinite(box_side))
        throw ValidationError("box_side must be positive and finite");

    GridSpec g;
    g.n_ = n;
    g.box_side_ = box_side;
    g.dk_ = 2.0 * kPi / box_side;
    g.k_.resize(n);
    g.k_deriv_.resize(n);
    g.keep_.resize(n);
    for (int i = 0; i < n; ++i) {
        const int m = g.mode(i);
        g.k_[i] = g.dk_ * m;
        g.k_deriv_[i] = g.is_nyquist(i) ? 0.0 : g.k_[i];
        g.keep_[i] = 3 * std::abs(m) < n ? 1 : 0;
    }
    return g;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw ValidationError(std::string(what) + ": fields live on different grids");
}

}  // namespace hallmhd
