/// @file forms.hpp
/// @brief Differential forms on a chart: wedge product, exterior derivative,
/// and the metric Hodge dual on 2+1 charts used by the twist construction.
///
/// Components are stored on strictly increasing multi-indices; the full
/// antisymmetric array is recovered by permutation signs. Orientation is
/// fixed globally by eps_{01..(n-1)} = +sqrt|det g|.

#pragma once

#include <vector>

#include "cartan/field.hpp"

namespace cartan {

/// Strictly increasing multi-indices of length k over {0..dim-1}, ordered
/// lexicographically. rank() maps an increasing tuple back to its position.
class IndexSet {
  public:
    IndexSet(int dim, int degree);
    int size() const { return static_cast<int>(tuples_.size()); }
    const std::vector<int>& tuple(int r) const { return tuples_[static_cast<size_t>(r)]; }
    int rank(const std::vector<int>& increasing) const;

  private:
    int dim_, degree_;
    std::vector<std::vector<int>> tuples_;
};

/// Sort `idx` in place; returns the permutation sign, or 0 on a repeat.
int sort_sign(std::vector<int>& idx);

class FormField {
  public:
    FormField() = default;
    /// Components listed in IndexSet order for (chart.dim, degree).
    FormField(Chart chart, int degree, std::vector<ScalarField> comps);

    static FormField zero(const Chart& chart, int degree);
    /// Coordinate differential dx^i (a one-form with constant components).
    static FormField coordinate(const Chart& chart, int i);

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const IndexSet& indices() const { return *iset_; }

    const ScalarField& comp(int rank) const;
    /// Component for an arbitrary index tuple, with antisymmetrization sign.
    ScalarField comp(std::vector<int> idx) const;

    /// Value of the stored (strictly increasing) components at a point.
    std::vector<double> values(const Point& x) const;
    /// Single component value with sign handling for arbitrary index order.
    double value(const Point& x, std::vector<int> idx) const;

    FormField operator+(const FormField& o) const;
    FormField operator-(const FormField& o) const;
    FormField scaled(const ScalarField& s) const;

  private:
    Chart chart_;
    int degree_ = 0;
    std::shared_ptr<const IndexSet> iset_;
    std::vector<ScalarField> comps_;
};

/// Exterior (wedge) product. Graded-commutative, bilinear. Throws on chart
/// mismatch or when degrees exceed the chart dimension.
FormField wedge(const FormField& a, const FormField& b);

/// Exterior derivative via the fields' partials (analytic when available,
/// 4th-order FD otherwise). Requires degree < dim.
FormField exterior_derivative(const FormField& a);

/// Metric Hodge dual on a 3-dimensional (2+1) chart for degrees 1 and 2,
/// with eps_{012} = +sqrt(-det g). Throws on non-3d charts or degenerate g.
FormField hodge_dual_2d(const FormField& a, const MatrixField& g);

}  // namespace cartan
