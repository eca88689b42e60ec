/// @file weyl.hpp
/// @brief Weyl tensor, Bel-Robinson tensor with its divergence, the
/// gravitational F-tensor view of curvature, and the residual of the
/// curvature wave equation in Cartan form.

#pragma once

#include "cartan/connection.hpp"

namespace cartan {

/// Lowered Weyl components W_{abcd} via the standard 4d decomposition
///   W = Riem - (1/2)(g o Ric) + (R/6)(g o g).
/// Pointwise evaluator; vacuum inputs give W = Riem.
class WeylField {
  public:
    WeylField() = default;
    WeylField(CurvatureField curv, CurvatureContraction con, MatrixField g);

    const Chart& chart() const { return curv_.chart(); }
    const MatrixField& metric() const { return g_; }
    Ten4 at(const Point& x) const;

    /// Max |g^{ac} W_{abcd}| over (b,d); zero for exact Weyl symmetry.
    double trace_norm(const Point& x) const;

  private:
    CurvatureField curv_;
    CurvatureContraction con_;
    MatrixField g_;
};

/// Throws unless the chart is 4-dimensional.
WeylField weyl_tensor(const CurvatureField& curv,
                      const CurvatureContraction& con, const MatrixField& g);

/// Bel-Robinson tensor built from the Weyl tensor,
///   Q_abcd = W_{a m c n} W_b^m_d^n + W_{a m d n} W_b^m_c^n
///            - (1/8) g_ab g_cd |W|^2.
class BelRobinson {
  public:
    BelRobinson() = default;
    explicit BelRobinson(WeylField w);

    const Chart& chart() const { return w_.chart(); }
    const MatrixField& metric() const { return w_.metric(); }
    Ten4 at(const Point& x) const;

    /// Q(X, X, Y, Y) for vectors given in coordinate components.
    double contract_xxyy(const Point& x, const double X[4], const double Y[4]) const;
    /// Max deviation from total symmetry over all 24 permutations.
    double symmetry_defect(const Point& x) const;

  private:
    WeylField w_;
};

BelRobinson bel_robinson(const WeylField& w, const MatrixField& g);

/// Divergence D^nu Q_{ab m nu} by 4th-order FD of step h plus Christoffel
/// corrections. Requires analytic curvature input for meaningful tolerances.
Ten3 divergence_bel_robinson(const BelRobinson& q, const ChristoffelField& chr,
                             const Point& x, double h);

/// Yang-Mills view of the curvature: F^a_{b mu nu} with the spin connection
/// as vector potential A^a_{b mu}.
struct GravitationalF {
    CurvatureField curv;
    SpinConnection potential;

    Ten4 F_at(const Point& x) const { return curv.mixed_at(x); }
    Ten3 A_at(const Point& x) const { return potential.at(x); }

    /// Max |F - (dA + A ^ A)| with dA evaluated by 4th-order FD of step h;
    /// an independent numeric check of the second structural equation.
    double structural_residual(const Point& x, double h) const;
};

GravitationalF gravitational_F(const CurvatureField& curv,
                               const SpinConnection& theta);

/// Residual of the curvature wave equation in Cartan form,
///   box F^a_{b mu nu} + Riem_{mu nu}^{gamma delta} F^a_{b gamma delta}
///     - N^a_{b mu nu}(Theta, Riem),
/// evaluated with nested 4th-order FD covariant derivatives of step h
/// (the spin-connection and Christoffel transport terms are the expanded
/// Theta-gradient blocks). Zero on vacuum solutions up to FD error.
Ten4 penrose_wave_residual(const CurvatureField& curv, const SpinConnection& theta,
                           const CoFrame& coframe, const MatrixField& g,
                           const Point& x, double h);

/// Cyclic second-Bianchi sum D_e R_{ab cd} + D_c R_{ab de} + D_d R_{ab ec},
/// max over components, via FD covariant derivatives of step h.
double second_bianchi_residual(const CurvatureField& curv,
                               const ChristoffelField& chr, const Point& x,
                               double h);

/// Max |D^a Riem_{ab cd}| (vanishes in vacuum).
double riemann_divergence_residual(const CurvatureField& curv,
                                   const ChristoffelField& chr, const Point& x,
                                   double h);

}  // namespace cartan
