/// @file connection.hpp
/// @brief Torsion-free metric spin connection from structure coefficients,
/// curvature two-forms (second structural equation), Ricci/Einstein
/// contraction, and an independent Christoffel-based Riemann oracle.

#pragma once

#include "cartan/frame.hpp"

namespace cartan {

/// Connection one-forms Theta^a_{b mu} (frame pair a,b; coordinate leg mu).
/// Lowered Theta_{ab mu} is antisymmetric in (a,b) by construction.
class SpinConnection {
  public:
    SpinConnection() = default;
    SpinConnection(Chart chart, std::vector<ScalarField> theta);

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    const ScalarField& theta(int a, int b, int mu) const;

    /// Dense Theta^a_{b mu} at a point.
    Ten3 at(const Point& x) const;

  private:
    Chart chart_;
    std::vector<ScalarField> comp_;  // [a][b][mu] row-major
};

/// Solve the first structural equation de^a = -Theta^a_c ^ e^c for the
/// unique torsion-free metric-compatible connection, algebraically from the
/// structure coefficients C^a_{bc} of the frame.
SpinConnection solve_spin_connection(const CoFrame& coframe);

/// Max-norm of the first structural equation residual de^a + Theta^a_c ^ e^c
/// over all components, at a point.
double first_structural_residual(const CoFrame& coframe,
                                 const SpinConnection& theta, const Point& x);

/// Curvature from the second structural equation,
/// Riem^a_b = d Theta^a_b + Theta^a_c ^ Theta^c_b, exposed as mixed
/// components F^a_{b mu nu} (the gravitational F-tensor) and frame
/// components Riem^a_{bcd}.
class CurvatureField {
  public:
    CurvatureField() = default;
    CurvatureField(CoFrame frame, std::vector<ScalarField> mixed);

    const Chart& chart() const { return frame_.chart(); }
    const CoFrame& coframe() const { return frame_; }
    int dim() const { return frame_.dim(); }

    const ScalarField& mixed(int a, int b, int mu, int nu) const;
    ScalarField frame_comp(int a, int b, int c, int d) const;

    /// Dense mixed components F^a_{b mu nu} at a point.
    Ten4 mixed_at(const Point& x) const;
    /// Dense frame components Riem^a_{bcd} at a point.
    Ten4 frame_at(const Point& x) const;
    /// Frame components with the first index lowered by eta.
    Ten4 frame_lowered_at(const Point& x) const;
    /// Coordinate components with all indices lowered by the metric.
    Ten4 coord_lowered_at(const Point& x) const;

  private:
    CoFrame frame_;
    std::vector<ScalarField> mixed_;        // [a][b][mu][nu]
    mutable std::vector<ScalarField> fr_;   // [a][b][c][d], built lazily
    void build_frame_comps() const;
};

CurvatureField curvature_two_forms(const CoFrame& coframe,
                                   const SpinConnection& theta);

/// Ricci, scalar and Einstein tensors in coordinate indices.
struct CurvatureContraction {
    MatrixField ricci;     // Ric_{mu nu}
    ScalarField scal;      // R
    MatrixField einstein;  // Ric - (R/2) g
};

CurvatureContraction contract_curvature(const CurvatureField& curv,
                                        const CoFrame& coframe);

/// Christoffel symbols of a metric as differentiable fields.
class ChristoffelField {
  public:
    ChristoffelField() = default;
    ChristoffelField(Chart chart, MatrixField g);

    const Chart& chart() const { return chart_; }
    const MatrixField& metric() const { return g_; }
    const ScalarField& gamma(int l, int m, int n) const;  // Gamma^l_{mn}
    Ten3 at(const Point& x) const;

  private:
    Chart chart_;
    MatrixField g_;
    std::vector<ScalarField> comp_;
};

/// Independent curvature oracle: Riemann from Christoffel symbols,
/// Riem^l_{s mu nu} = d Gamma - d Gamma + Gamma Gamma - Gamma Gamma.
class CoordCurvature {
  public:
    CoordCurvature() = default;
    CoordCurvature(ChristoffelField christoffel,
                   std::vector<ScalarField> riem);

    const Chart& chart() const { return chr_.chart(); }
    const ChristoffelField& christoffel() const { return chr_; }
    const ScalarField& riem(int l, int s, int mu, int nu) const;

    Ten4 at(const Point& x) const;           // Riem^l_{s mu nu}
    Ten4 lowered_at(const Point& x) const;   // Riem_{ls mu nu}
    /// Frame components Riem^a_{bcd} via a coframe, for comparison with the
    /// structural-equation path.
    Ten4 frame_at(const CoFrame& coframe, const Point& x) const;

  private:
    ChristoffelField chr_;
    std::vector<ScalarField> comp_;  // [l][s][mu][nu]
};

CoordCurvature coordinate_riemann_oracle(const Chart& chart,
                                         const MatrixField& g);

/// Covariant derivative of the fully lowered Riemann tensor at a point:
/// returns D_e R_{abcd} as Ten4 per derivative index e, computed with
/// 4th-order FD of step `h` on the pointwise evaluator plus Christoffel
/// corrections.
std::array<Ten4, kMaxDim> covariant_riemann_derivative(
    const CurvatureField& curv, const ChristoffelField& chr, const Point& x,
    double h);

}  // namespace cartan
