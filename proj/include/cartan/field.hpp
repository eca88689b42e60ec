/// @file field.hpp
/// @brief Coordinate charts and scalar fields with exact derivative tracking.
///
/// A ScalarField is a DAG of arithmetic nodes over chart coordinates. Fields
/// built from expressions (or from other fields by +,*,exp,...) carry exact
/// partial derivatives to every order; fields wrapping an opaque callable fall
/// back to 4th-order central finite differences with one-sided stencils near
/// the domain boundary.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cartan {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kMaxDim = 4;

/// Evaluation point; entries past the chart dimension are ignored.
using Point = std::array<double, kMaxDim>;

inline Point make_point(std::initializer_list<double> xs) {
    Point p{0.0, 0.0, 0.0, 0.0};
    int i = 0;
    for (double v : xs) p[static_cast<size_t>(i++)] = v;
    return p;
}

struct Interval {
    double lo = -1e300;
    double hi = 1e300;
};

/// A coordinate chart: dimension, coordinate names, metric signature and the
/// box on which fields may be evaluated. Lorentzian charts put the single -1
/// first; Riemannian charts have none.
class Chart {
  public:
    Chart() = default;
    Chart(std::vector<std::string> names, std::vector<int> signature,
          std::vector<Interval> box);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& coord_names() const { return names_; }
    const std::vector<int>& signature() const { return sig_; }
    const std::vector<Interval>& domain_box() const { return box_; }
    bool lorentzian() const { return lorentzian_; }

    int coord_index(const std::string& name) const;
    bool contains(const Point& x) const;
    void require_inside(const Point& x) const;  // throws Error if outside

    bool operator==(const Chart& o) const {
        return names_ == o.names_ && sig_ == o.sig_;
    }
    bool operator!=(const Chart& o) const { return !(*this == o); }

  private:
    std::vector<std::string> names_;
    std::vector<int> sig_;
    std::vector<Interval> box_;
    bool lorentzian_ = false;
};

namespace detail {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Per-point evaluation context with node memoization.
struct EvalCtx {
    const double* x;
    std::unordered_map<const Node*, double> memo;
    explicit EvalCtx(const double* p) : x(p) {}
};

struct Node : std::enable_shared_from_this<Node> {
    virtual ~Node() = default;
    virtual double eval(EvalCtx&) const = 0;
    virtual NodePtr make_derivative(int i) const = 0;
    virtual bool constant_value(double* v) const {
        (void)v;
        return false;
    }
    /// True when every node beneath has exact derivatives.
    virtual bool analytic() const { return true; }

    double value(EvalCtx& c) const;
    NodePtr derivative(int i) const;  // cached

  private:
    mutable std::array<NodePtr, kMaxDim> dcache_{};
};

}  // namespace detail

class ScalarField {
  public:
    ScalarField() = default;
    /* implicit */ ScalarField(double c);  // constant field

    static ScalarField constant(double c);
    static ScalarField coord(int index);
    /// Wrap an opaque callable; derivatives use FD with the given step, kept
    /// inside `box` (may be empty for unconstrained evaluation).
    static ScalarField function(std::function<double(const double*)> f,
                                double fd_step = 1e-5,
                                std::vector<Interval> box = {});

    bool valid() const { return node_ != nullptr; }
    bool analytic() const;
    bool is_zero() const;

    double operator()(const Point& x) const;
    double operator()(const double* x) const;

    ScalarField partial(int i) const;

    detail::NodePtr node() const { return node_; }
    static ScalarField from_node(detail::NodePtr n);

  private:
    detail::NodePtr node_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);

ScalarField exp(const ScalarField& f);
ScalarField log(const ScalarField& f);
ScalarField sin(const ScalarField& f);
ScalarField cos(const ScalarField& f);
ScalarField sqrt(const ScalarField& f);
ScalarField pow(const ScalarField& f, double p);

/// Square matrix of fields with differentiable inverse and determinant.
/// Inverse entries and the determinant are fields themselves, so they can be
/// differentiated to any order via d(A^-1) = -A^-1 dA A^-1 and Jacobi's rule.
class MatrixField {
  public:
    MatrixField() = default;
    MatrixField(int n, std::vector<ScalarField> row_major_entries);

    int n() const;
    const ScalarField& at(int i, int j) const;
    ScalarField inverse_entry(int i, int j) const;
    ScalarField det() const;

    /// Dense value at a point.
    std::vector<double> value(const Point& x) const;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Dense n x n inverse with partial pivoting. Throws Error when |det| is
/// below `min_abs_det`.
void invert_dense(int n, const double* a, double* inv,
                  double min_abs_det = 1e-12);
double det_dense(int n, const double* a);

}  // namespace cartan
