#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coswave {

enum class GridMode { Cartesian1d, Radial };

// Uniform grid: Cartesian1d spans [-L, L] with 2N-1 points, Radial spans [0, L]
// with N points. Spacing h = L/(N-1) in both modes.
struct Grid {
    GridMode mode = GridMode::Cartesian1d;
    int dim = 1;       // spatial dimension n (1 for Cartesian1d)
    double length = 0; // domain radius L
    int points = 0;    // N

    double spacing() const { return length / (points - 1); }
    std::size_t size() const {
        return mode == GridMode::Cartesian1d ? std::size_t(2 * points - 1) : std::size_t(points);
    }
    double coord(std::size_t i) const {
        return mode == GridMode::Cartesian1d ? -length + double(i) * spacing()
                                             : double(i) * spacing();
    }
    double radius(std::size_t i) const { return std::abs(coord(i)); }

    // Volume element for integrals over R^n: h for Cartesian1d,
    // omega_{n-1} r^{n-1} h for Radial (trapezoid half-weights at the ends).
    double cell_volume(std::size_t i) const;
};

struct FieldState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;  // u_t
};

inline double sphere_surface_area(int n) {
    // omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

inline double Grid::cell_volume(std::size_t i) const {
    const double h = spacing();
    const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
    if (mode == GridMode::Cartesian1d) return w * h;
    const double r = coord(i);
    return w * h * sphere_surface_area(dim) * std::pow(r, dim - 1);
}

}  // namespace coswave
