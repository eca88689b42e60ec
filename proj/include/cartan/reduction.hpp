/// @file reduction.hpp
/// @brief Kaluza-Klein reduction of U(1)-symmetric 4-metrics
///   gbar = gtilde + e^{2 gamma} (dx3 + A_nu dx^nu)^2
/// on a 2+1 chart: adapted coframe assembly, Ricci projections, reduced
/// Riemann blocks (depending on A only through F = dA), scalar curvature,
/// twist potential, and the Einstein / wave-map residuals on the
/// conformally rescaled orbit metric g = e^{2 gamma} gtilde.
///
/// Metric bookkeeping: KKData stores the pre-conformal gtilde. Each
/// operation states which of gtilde / g its formula uses.

#pragma once

#include <functional>

#include "cartan/connection.hpp"
#include "cartan/forms.hpp"

namespace cartan {

struct KKData {
    Chart chart3;        // coordinates (t, x1, x2), Lorentzian
    ScalarField gamma;   // fiber log-scale
    FormField A;         // one-form A_mu dx^mu on chart3
    MatrixField gtilde;  // pre-conformal orbit metric
    bool polarized = false;

    static KKData make(Chart chart3, ScalarField gamma, FormField A,
                       MatrixField gtilde);
    /// Polarized data (A = 0).
    static KKData make_polarized(Chart chart3, ScalarField gamma,
                                 MatrixField gtilde);

    FormField faraday() const;           // F = dA
    MatrixField conformal_metric() const;  // g = e^{2 gamma} gtilde
    Chart chart4() const;                // chart3 extended by x3
    MatrixField metric4() const;         // assembled 4-metric field
};

/// Adapted 4d coframe: triad of gtilde (timelike leg first) plus
/// e^{x3} = e^gamma (dx3 + A_nu dx^nu). Reconstructs the 4-metric exactly.
CoFrame assemble_kk_coframe(const KKData& kk);

/// The three Ricci projections of the 4-metric onto the orbit space, in
/// gtilde-covariant form:
///   Ric_{mu nu} = Ric(gt)_{mu nu} - D_mu D_nu gamma - d_mu gamma d_nu gamma
///                 - (1/2) e^{2 gamma} F_{mu s} F_nu^s
///   Ric_{mu 3}  = -(1/2) e^{-gamma} D_s (e^{3 gamma} F_mu^s)
///   Ric_{33}    = -e^{2 gamma} (Box gamma + |D gamma|^2)
///                 + (1/4) e^{4 gamma} F_{mn} F^{mn}
/// (all raising and covariant derivatives with gtilde).
struct RicciProjections {
    MatrixField ric_munu;              // 3x3
    std::vector<ScalarField> ric_mu3;  // 3 components
    ScalarField ric_33;
};
RicciProjections ricci_projections(const KKData& kk);

/// Reduced Riemann tensor organized by block, in the adapted orthonormal
/// frame (indices 0..2 = triad, 3 = fiber). Built from the reduced spin
/// connection, which depends on A only through F = dA:
///   Theta^3_a = d_a gamma e^3 + (1/2) e^gamma F_{ab} e^b
///   Theta^a_b = Theta(gt)^a_b - (1/2) e^gamma F^a_b e^3.
class ReducedRiemann {
  public:
    ReducedRiemann() = default;
    explicit ReducedRiemann(const KKData& kk);

    /// All frame components Riem^a_{bcd} at a point of the 3-chart.
    Ten4 frame_at(const Point& x) const;
    /// Closed-form fiber block Riem^3_{a 3 b} = -D_a D_b gamma
    ///   - d_a gamma d_b gamma - (1/4) e^{2 gamma} F_{ac} F_b^c
    /// (frame components of the displayed formula).
    Mat4 fiber_block_closed_at(const Point& x) const;

    const CoFrame& coframe() const { return frame_; }
    const CurvatureField& curvature() const { return curv_; }
    const SpinConnection& connection() const { return theta_; }

  private:
    CoFrame frame_;
    SpinConnection theta_;
    CurvatureField curv_;
    std::vector<ScalarField> fiber_closed_;  // 3x3 frame components
};

ReducedRiemann reduced_riemann(const KKData& kk);

/// Scal(gbar) = Scal(gt) - 2 Box gamma - 2 |D gamma|^2
///              - (1/4) e^{2 gamma} F_{mn} F^{mn} (gtilde conventions).
ScalarField reduced_scalar_curvature(const KKData& kk);

/// Twist one-form G = e^{3 gamma} *_{gtilde} F and its potential omega with
/// d omega = G, integrated along axis-parallel staircase paths from
/// base_point with Gauss-Legendre segment quadrature.
struct TwistData {
    FormField F;  // dA
    FormField G;  // e^{3 gamma} * F
    std::function<double(const Point&)> omega;
    double dG_residual = 0.0;  // max |dG| over probe points
    /// |omega via (t,x1,x2) path - omega via (x2,x1,t) path| at x.
    std::function<double(const Point&)> path_mismatch;
};

/// Throws (reporting the residual) when |dG| exceeds `closed_tol` on the
/// probe lattice: the potential only exists for closed G.
TwistData twist_potential(const KKData& kk, const Point& base_point,
                          double closed_tol = 1e-8, int quad_nodes = 24);

/// Einstein/wave-map residuals on the conformal metric g (2+1):
///   r_gamma = Box_g gamma + (1/2) e^{-4 gamma} g^{ab} d_a omega d_b omega
///   r_omega = Box_g omega - 4 g^{ab} d_a gamma d_b omega
///   T_mn    = 4 d gamma d gamma + e^{-4 gamma} d omega d omega
///             - (1/2) g_mn (4 |d gamma|^2 + e^{-4 gamma} |d omega|^2)
/// plus the Einstein-tensor mismatch Ein(g) - T via the 3d structural
/// equations. The omega-equation follows the hyperbolic-plane target
/// h = 4 dgamma^2 + e^{-4 gamma} domega^2.
struct WaveMapResiduals {
    ScalarField r_gamma;
    ScalarField r_omega;
    MatrixField stress;
    MatrixField einstein_minus_stress;
};
WaveMapResiduals wavemap_residuals(const MatrixField& g3, const Chart& chart3,
                                   const ScalarField& gamma,
                                   const ScalarField& omega);

/// Covariant d'Alembertian Box_g f as a field (any dimension, Lorentzian).
ScalarField dalembertian(const MatrixField& g, const Chart& chart,
                         const ScalarField& f);

}  // namespace cartan
