#include "cartan/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace cartan {

namespace {

const double kPi = 3.14159265358979323846;

/// Golub-Welsch: nodes/weights from the symmetric Jacobi matrix of a
/// three-term recurrence (diag a_k, offdiag sqrt(b_k)), mu0 = int of weight.
Quad1D golub_welsch(const std::vector<double>& a, const std::vector<double>& b,
                    double mu0) {
    const int n = static_cast<int>(a.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = a[static_cast<size_t>(i)];
        if (i + 1 < n) {
            const double s = std::sqrt(b[static_cast<size_t>(i + 1)]);
            J(i, i + 1) = s;
            J(i + 1, i) = s;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Quad1D q;
    q.nodes.resize(static_cast<size_t>(n));
    q.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        q.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        q.weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
    }
    return q;
}

}  // namespace

Quad1D gauss_legendre(int n) {
    if (n < 1) throw Error("gauss_legendre: need n >= 1");
    std::vector<double> a(static_cast<size_t>(n), 0.0), b(static_cast<size_t>(n), 0.0);
    for (int k = 1; k < n; ++k)
        b[static_cast<size_t>(k)] =
            static_cast<double>(k * k) / (4.0 * k * k - 1.0);
    return golub_welsch(a, b, 2.0);
}

Quad1D gauss_legendre_ab(int n, double lo, double hi) {
    Quad1D q = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (size_t i = 0; i < q.nodes.size(); ++i) {
        q.nodes[i] = mid + half * q.nodes[i];
        q.weights[i] *= half;
    }
    return q;
}

Quad1D gauss_jacobi_m_half_01(int n) {
    if (n < 1) throw Error("gauss_jacobi: need n >= 1");
    // Jacobi weight (1-x)^a (1+x)^b on [-1,1] with a = -1/2, b = 0.
    const double al = -0.5, be = 0.0;
    std::vector<double> a(static_cast<size_t>(n), 0.0), b(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        const double den = (2.0 * k + al + be) * (2.0 * k + al + be + 2.0);
        a[static_cast<size_t>(k)] = den != 0 ? (be * be - al * al) / den : 0.0;
    }
    for (int k = 1; k < n; ++k) {
        double bk;
        if (k == 1) {
            bk = 4.0 * (1 + al) * (1 + be) /
                 ((2 + al + be) * (2 + al + be) * (3 + al + be));
        } else {
            const double s = 2.0 * k + al + be;
            bk = 4.0 * k * (k + al) * (k + be) * (k + al + be) /
                 (s * s * (s + 1.0) * (s - 1.0));
        }
        b[static_cast<size_t>(k)] = bk;
    }
    const double mu0 = 2.0 * std::sqrt(2.0);  // int_{-1}^{1} (1-x)^{-1/2} dx
    Quad1D q = golub_welsch(a, b, mu0);
    // map x in [-1,1] -> u = (1+x)/2 in [0,1]; (1-x)^{-1/2} = (2(1-u))^{-1/2}
    for (size_t i = 0; i < q.nodes.size(); ++i) {
        q.nodes[i] = 0.5 * (1.0 + q.nodes[i]);
        q.weights[i] *= 0.5 * std::sqrt(2.0);
    }
    return q;
}

SphereRule sphere_rule(int n_polar, int n_azimuth) {
    if (n_polar < 4 || n_azimuth < 4)
        throw Error("sphere_rule: orders must be >= 4");
    Quad1D mu = gauss_legendre(n_polar);
    SphereRule out;
    for (int i = 0; i < n_azimuth; ++i) {
        const double phi = 2.0 * kPi * i / n_azimuth;
        const double wphi = 2.0 * kPi / n_azimuth;
        for (int k = 0; k < n_polar; ++k) {
            const double c = mu.nodes[static_cast<size_t>(k)];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            out.points.push_back({s * std::cos(phi), s * std::sin(phi), c});
            out.weights.push_back(wphi * mu.weights[static_cast<size_t>(k)]);
        }
    }
    return out;
}

DiskRule disk_rule(int n_radial, int n_azimuth) {
    if (n_radial < 4 || n_azimuth < 4)
        throw Error("disk_rule: orders must be >= 4");
    Quad1D gj = gauss_jacobi_m_half_01(n_radial);
    DiskRule out;
    for (int i = 0; i < n_azimuth; ++i) {
        const double phi = 2.0 * kPi * i / n_azimuth;
        const double wphi = 2.0 * kPi / n_azimuth;
        for (int k = 0; k < n_radial; ++k) {
            const double r = std::sqrt(gj.nodes[static_cast<size_t>(k)]);
            out.points.push_back({r * std::cos(phi), r * std::sin(phi)});
            // int_D f w dy = int dphi (1/2) int_0^1 f (1-u)^{-1/2} du
            out.weights.push_back(wphi * 0.5 * gj.weights[static_cast<size_t>(k)]);
        }
    }
    return out;
}

}  // namespace cartan
