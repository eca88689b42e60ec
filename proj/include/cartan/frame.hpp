/// @file frame.hpp
/// @brief Orthonormal coframes: e^a_mu component fields, dual frames via the
/// differentiable matrix inverse, and frame construction from a metric by a
/// signature-respecting Cholesky factorization (timelike leg first).

#pragma once

#include "cartan/field.hpp"
#include "cartan/forms.hpp"

namespace cartan {

/// Small dense tensors used for pointwise results.
struct Mat4 {
    double v[kMaxDim][kMaxDim] = {};
};
struct Ten3 {
    double v[kMaxDim][kMaxDim][kMaxDim] = {};
};
struct Ten4 {
    double v[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
};

/// Evaluate several fields at one point sharing a single memo context.
std::vector<double> eval_fields(const std::vector<ScalarField>& fields,
                                const Point& x);

class CoFrame {
  public:
    CoFrame() = default;
    /// `e_comp[a*dim + mu]` are the one-form components e^a_mu.
    CoFrame(Chart chart, std::vector<ScalarField> e_comp);

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    double eta(int a) const { return chart_.signature()[static_cast<size_t>(a)]; }

    const ScalarField& e(int a, int mu) const;
    /// Dual frame vector components e_a^mu as differentiable fields.
    ScalarField dual(int a, int mu) const;
    FormField form(int a) const;

    /// Frame matrix e^a_mu at a point (row a, column mu). Throws when the
    /// matrix is singular (|det| <= 1e-12).
    Mat4 matrix_at(const Point& x) const;
    /// Pointwise dual (inverse) matrix e_a^mu (row a, column mu).
    Mat4 dual_at(const Point& x) const;

    /// Reconstructed metric g_{mu nu} = eta_ab e^a_mu e^b_nu.
    MatrixField metric() const;

  private:
    Chart chart_;
    std::vector<ScalarField> comp_;
    MatrixField mat_;  // rows a, cols mu
};

/// Orthonormal coframe from a metric via pointwise Cholesky-type
/// factorization g = L eta L^T, e^a_mu = L_{mu a}. The first frame leg is
/// timelike on Lorentzian charts. Entries are differentiable fields.
CoFrame coframe_from_metric(const Chart& chart, const MatrixField& g);

/// Metric field from explicit entries (row-major, must be symmetric).
MatrixField metric_from_entries(const Chart& chart,
                                std::vector<ScalarField> entries);

/// Pointwise n x n inverse of a metric with singularity guard.
Mat4 metric_inverse_at(const MatrixField& g, const Point& x);

}  // namespace cartan
