/// @file fixtures.hpp
/// @brief Built-in metric fixtures addressable by name: "minkowski4",
/// "kasner(p1,p2,p3)", "schwarzschild(m)", "equivariant(Omega;gamma)" with
/// expression-valued arguments, plus synthetic metrics used by the test
/// oracles (perturbed flat, conformally flat, round sphere).

#pragma once

#include <string>

#include "cartan/frame.hpp"

namespace cartan {

struct Fixture {
    std::string name;
    Chart chart;
    CoFrame coframe;     // analytic orthonormal coframe
    MatrixField metric;  // same metric, independent entry fields
    bool vacuum = false;
    std::vector<Point> samples;  // interior points for spot checks
};

Fixture minkowski4();
Fixture kasner(double p1, double p2, double p3);
Fixture schwarzschild(double m);
/// 2+1 metric -e^{2 Omega} dt^2 + e^{2 gamma} dr^2 + r^2 dtheta^2 with
/// expression-valued Omega(t,r), gamma(t,r).
Fixture equivariant(const std::string& omega_expr,
                    const std::string& gamma_expr);
/// Round 2-sphere of radius a (Riemannian chart).
Fixture sphere2(double a);
/// Conformally flat a(t)^2 (-dt^2 + dx^2) with a = 1 + eps t^2.
Fixture conformally_flat(double eps);
/// Flat 4-metric plus a smooth random trigonometric perturbation of the
/// given amplitude; deterministic in the seed.
Fixture perturbed_flat(unsigned seed, double amplitude);
/// Flat metric plus amplitude * (quadratic polynomial in x) per component;
/// g(0) = eta. Used by the quasi-local scaling tests.
Fixture quadratic_bump(unsigned seed, double amplitude);

/// Parse "name", "name(arg,...)" or "name:arg,..." fixture strings;
/// numeric arguments accept fractions like "2/3". Throws Error naming the
/// offending field on malformed input.
Fixture fixture_from_spec(const std::string& spec);

/// Kasner exponents (p, p, 1-2p) satisfying both Kasner relations for
/// p = 2/3: the standard (2/3, 2/3, -1/3) case used across the tests.
inline void standard_kasner(double& p1, double& p2, double& p3) {
    p1 = 2.0 / 3.0;
    p2 = 2.0 / 3.0;
    p3 = -1.0 / 3.0;
}

}  // namespace cartan
