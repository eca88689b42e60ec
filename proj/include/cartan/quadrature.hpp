/// @file quadrature.hpp
/// @brief Gauss rules via Golub-Welsch: Legendre, Jacobi with the exact
/// (1-u)^{-1/2} disk weight, and the product sphere/disk rules used by the
/// wave kernels.

#pragma once

#include <vector>

#include "cartan/field.hpp"

namespace cartan {

struct Quad1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre on [-1, 1].
Quad1D gauss_legendre(int n);
/// n-point Gauss-Legendre mapped to [a, b].
Quad1D gauss_legendre_ab(int n, double a, double b);
/// n-point Gauss-Jacobi on [0, 1] with weight (1-u)^{-1/2}; weights sum to 2.
Quad1D gauss_jacobi_m_half_01(int n);

/// Product rule on the unit sphere: Gauss in cos(theta) x trapezoid in phi.
/// Weights sum to 4 pi.
struct SphereRule {
    std::vector<std::array<double, 3>> points;  // unit vectors
    std::vector<double> weights;
};
SphereRule sphere_rule(int n_polar, int n_azimuth);

/// Product rule on the unit disk for integrals with the (1-|y|^2)^{-1/2}
/// weight built in: sum_i w_i f(y_i) ~ int_D f(y) (1-|y|^2)^{-1/2} dy.
struct DiskRule {
    std::vector<std::array<double, 2>> points;
    std::vector<double> weights;
};
DiskRule disk_rule(int n_radial, int n_azimuth);

}  // namespace cartan
