#include "cartan/field.hpp"

#include <algorithm>
#include <sstream>

namespace cartan {

// ---------------------------------------------------------------------------
// Chart
// ---------------------------------------------------------------------------

Chart::Chart(std::vector<std::string> names, std::vector<int> signature,
             std::vector<Interval> box)
    : names_(std::move(names)), sig_(std::move(signature)), box_(std::move(box)) {
    const size_t d = names_.size();
    if (d < 1 || d > kMaxDim) throw Error("chart dimension must be 1..4");
    if (sig_.size() != d) throw Error("chart signature length != dim");
    if (box_.size() != d) throw Error("chart domain_box length != dim");
    int minus = 0;
    for (int s : sig_) {
        if (s != 1 && s != -1) throw Error("chart signature entries must be +-1");
        if (s == -1) ++minus;
    }
    if (minus > 1) throw Error("chart signature has more than one -1");
    lorentzian_ = (minus == 1);
    if (lorentzian_ && sig_[0] != -1)
        throw Error("Lorentzian chart must list the timelike coordinate first");
    for (const auto& iv : box_)
        if (!(iv.lo < iv.hi)) throw Error("chart domain_box interval is empty");
}

int Chart::coord_index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw Error("chart has no coordinate named '" + name + "'");
}

bool Chart::contains(const Point& x) const {
    for (int i = 0; i < dim(); ++i) {
        const auto& iv = box_[static_cast<size_t>(i)];
        if (x[static_cast<size_t>(i)] < iv.lo || x[static_cast<size_t>(i)] > iv.hi)
            return false;
    }
    return true;
}

void Chart::require_inside(const Point& x) const {
    if (!contains(x)) {
        std::ostringstream os;
        os << "point (";
        for (int i = 0; i < dim(); ++i)
            os << x[static_cast<size_t>(i)] << (i + 1 < dim() ? "," : "");
        os << ") outside chart domain_box";
        throw Error(os.str());
    }
}

// ---------------------------------------------------------------------------
// Nodes
// ---------------------------------------------------------------------------

namespace detail {

double Node::value(EvalCtx& c) const {
    auto it = c.memo.find(this);
    if (it != c.memo.end()) return it->second;
    double v = eval(c);
    c.memo.emplace(this, v);
    return v;
}

NodePtr Node::derivative(int i) const {
    if (i < 0 || i >= kMaxDim) throw Error("derivative index out of range");
    auto& slot = dcache_[static_cast<size_t>(i)];
    if (!slot) slot = make_derivative(i);
    return slot;
}

namespace {

struct ConstNode final : Node {
    double v;
    explicit ConstNode(double c) : v(c) {}
    double eval(EvalCtx&) const override { return v; }
    NodePtr make_derivative(int) const override {
        return std::make_shared<ConstNode>(0.0);
    }
    bool constant_value(double* out) const override {
        if (out) *out = v;
        return true;
    }
};

NodePtr make_const(double c) { return std::make_shared<ConstNode>(c); }

bool is_const(const NodePtr& n, double v) {
    double c;
    return n->constant_value(&c) && c == v;
}

struct CoordNode final : Node {
    int idx;
    explicit CoordNode(int i) : idx(i) {}
    double eval(EvalCtx& c) const override { return c.x[idx]; }
    NodePtr make_derivative(int i) const override {
        return make_const(i == idx ? 1.0 : 0.0);
    }
};

NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr divide(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);
NodePtr fexp(NodePtr a);
NodePtr flog(NodePtr a);
NodePtr fsin(NodePtr a);
NodePtr fcos(NodePtr a);
NodePtr fsqrt(NodePtr a);
NodePtr fpow(NodePtr a, double p);

struct AddNode final : Node {
    NodePtr a, b;
    AddNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}
    double eval(EvalCtx& c) const override { return a->value(c) + b->value(c); }
    NodePtr make_derivative(int i) const override {
        return add(a->derivative(i), b->derivative(i));
    }
    bool analytic() const override { return a->analytic() && b->analytic(); }
};

struct SubNode final : Node {
    NodePtr a, b;
    SubNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}
    double eval(EvalCtx& c) const override { return a->value(c) - b->value(c); }
    NodePtr make_derivative(int i) const override {
        return sub(a->derivative(i), b->derivative(i));
    }
    bool analytic() const override { return a->analytic() && b->analytic(); }
};

struct MulNode final : Node {
    NodePtr a, b;
    MulNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}
    double eval(EvalCtx& c) const override { return a->value(c) * b->value(c); }
    NodePtr make_derivative(int i) const override {
        return add(mul(a->derivative(i), b), mul(a, b->derivative(i)));
    }
    bool analytic() const override { return a->analytic() && b->analytic(); }
};

struct DivNode final : Node {
    NodePtr a, b;
    DivNode(NodePtr x, NodePtr y) : a(std::move(x)), b(std::move(y)) {}
    double eval(EvalCtx& c) const override { return a->value(c) / b->value(c); }
    NodePtr make_derivative(int i) const override {
        // (a'b - ab') / b^2
        return divide(sub(mul(a->derivative(i), b), mul(a, b->derivative(i))),
                      mul(b, b));
    }
    bool analytic() const override { return a->analytic() && b->analytic(); }
};

struct NegNode final : Node {
    NodePtr a;
    explicit NegNode(NodePtr x) : a(std::move(x)) {}
    double eval(EvalCtx& c) const override { return -a->value(c); }
    NodePtr make_derivative(int i) const override { return neg(a->derivative(i)); }
    bool analytic() const override { return a->analytic(); }
};

struct ExpNode final : Node {
    NodePtr a;
    explicit ExpNode(NodePtr x) : a(std::move(x)) {}
    double eval(EvalCtx& c) const override { return std::exp(a->value(c)); }
    NodePtr make_derivative(int i) const override {
        return mul(std::make_shared<ExpNode>(a), a->derivative(i));
    }
    bool analytic() const override { return a->analytic(); }
};

struct LogNode final : Node {
    NodePtr a;
    explicit LogNode(NodePtr x) : a(std::move(x)) {}
    double eval(EvalCtx& c) const override { return std::log(a->value(c)); }
    NodePtr make_derivative(int i) const override {
        return divide(a->derivative(i), a);
    }
    bool analytic() const override { return a->analytic(); }
};

struct SinNode;
struct CosNode;

struct SinNode final : Node {
    NodePtr a;
    explicit SinNode(NodePtr x) : a(std::move(x)) {}
    double eval(EvalCtx& c) const override { return std::sin(a->value(c)); }
    NodePtr make_derivative(int i) const override {
        return mul(fcos(a), a->derivative(i));
    }
    bool analytic() const override { return a->analytic(); }
};

struct CosNode final : Node {
    NodePtr a;
    explicit CosNode(NodePtr x) : a(std::move(x)) {}
    double eval(EvalCtx& c) const override { return std::cos(a->value(c)); }
    NodePtr make_derivative(int i) const override {
        return neg(mul(fsin(a), a->derivative(i)));
    }
    bool analytic() const override { return a->analytic(); }
};

struct SqrtNode final : Node {
    NodePtr a;
    explicit SqrtNode(NodePtr x) : a(std::move(x)) {}
    double eval(EvalCtx& c) const override { return std::sqrt(a->value(c)); }
    NodePtr make_derivative(int i) const override {
        return divide(a->derivative(i),
                      mul(make_const(2.0), std::make_shared<SqrtNode>(a)));
    }
    bool analytic() const override { return a->analytic(); }
};

struct PowNode final : Node {
    NodePtr a;
    double p;
    PowNode(NodePtr x, double e) : a(std::move(x)), p(e) {}
    double eval(EvalCtx& c) const override { return std::pow(a->value(c), p); }
    NodePtr make_derivative(int i) const override {
        return mul(mul(make_const(p), fpow(a, p - 1.0)), a->derivative(i));
    }
    bool analytic() const override { return a->analytic(); }
};

struct OpaqueNode final : Node {
    std::function<double(const double*)> f;
    double h;
    std::vector<Interval> box;
    OpaqueNode(std::function<double(const double*)> fn, double step,
               std::vector<Interval> b)
        : f(std::move(fn)), h(step), box(std::move(b)) {}
    double eval(EvalCtx& c) const override { return f(c.x); }
    NodePtr make_derivative(int i) const override;
    bool analytic() const override { return false; }
};

/// 4th-order finite-difference derivative of an arbitrary node. Central
/// stencil in the interior, 5-point one-sided near domain_box edges.
struct FdDerivNode final : Node {
    NodePtr f;
    int idx;
    double h;
    std::vector<Interval> box;
    FdDerivNode(NodePtr n, int i, double step, std::vector<Interval> b)
        : f(std::move(n)), idx(i), h(step), box(std::move(b)) {}

    double eval_at(const double* base, double shift) const {
        double xs[kMaxDim];
        std::copy(base, base + kMaxDim, xs);
        xs[idx] += shift;
        EvalCtx sub(xs);
        return f->value(sub);
    }

    double eval(EvalCtx& c) const override {
        double lo = -1e300, hi = 1e300;
        if (static_cast<size_t>(idx) < box.size()) {
            lo = box[static_cast<size_t>(idx)].lo;
            hi = box[static_cast<size_t>(idx)].hi;
        }
        const double x0 = c.x[idx];
        if (x0 - 2 * h >= lo && x0 + 2 * h <= hi) {
            return (-eval_at(c.x, 2 * h) + 8 * eval_at(c.x, h) -
                    8 * eval_at(c.x, -h) + eval_at(c.x, -2 * h)) /
                   (12 * h);
        }
        if (x0 + 4 * h <= hi) {  // forward one-sided, 4th order
            return (-25 * eval_at(c.x, 0) + 48 * eval_at(c.x, h) -
                    36 * eval_at(c.x, 2 * h) + 16 * eval_at(c.x, 3 * h) -
                    3 * eval_at(c.x, 4 * h)) /
                   (12 * h);
        }
        if (x0 - 4 * h >= lo) {  // backward one-sided
            return (25 * eval_at(c.x, 0) - 48 * eval_at(c.x, -h) +
                    36 * eval_at(c.x, -2 * h) - 16 * eval_at(c.x, -3 * h) +
                    3 * eval_at(c.x, -4 * h)) /
                   (12 * h);
        }
        throw Error("finite-difference stencil does not fit inside domain_box");
    }

    NodePtr make_derivative(int i) const override {
        return std::make_shared<FdDerivNode>(shared_from_this(), i, h, box);
    }
    bool analytic() const override { return false; }
};

NodePtr OpaqueNode::make_derivative(int i) const {
    return std::make_shared<FdDerivNode>(shared_from_this(), i, h, box);
}

NodePtr add(NodePtr a, NodePtr b) {
    double ca, cb;
    const bool ka = a->constant_value(&ca), kb = b->constant_value(&cb);
    if (ka && kb) return make_const(ca + cb);
    if (ka && ca == 0.0) return b;
    if (kb && cb == 0.0) return a;
    return std::make_shared<AddNode>(std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
    double ca, cb;
    const bool ka = a->constant_value(&ca), kb = b->constant_value(&cb);
    if (ka && kb) return make_const(ca - cb);
    if (kb && cb == 0.0) return a;
    if (ka && ca == 0.0) return neg(b);
    if (a == b) return make_const(0.0);
    return std::make_shared<SubNode>(std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
    double ca, cb;
    const bool ka = a->constant_value(&ca), kb = b->constant_value(&cb);
    if (ka && kb) return make_const(ca * cb);
    if ((ka && ca == 0.0) || (kb && cb == 0.0)) return make_const(0.0);
    if (ka && ca == 1.0) return b;
    if (kb && cb == 1.0) return a;
    if (ka && ca == -1.0) return neg(b);
    if (kb && cb == -1.0) return neg(a);
    return std::make_shared<MulNode>(std::move(a), std::move(b));
}

NodePtr divide(NodePtr a, NodePtr b) {
    double ca, cb;
    const bool ka = a->constant_value(&ca), kb = b->constant_value(&cb);
    if (kb && cb == 0.0) throw Error("field division by constant zero");
    if (ka && kb) return make_const(ca / cb);
    if (ka && ca == 0.0) return make_const(0.0);
    if (kb && cb == 1.0) return a;
    return std::make_shared<DivNode>(std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
    double ca;
    if (a->constant_value(&ca)) return make_const(-ca);
    if (auto n = std::dynamic_pointer_cast<const NegNode>(a)) return n->a;
    return std::make_shared<NegNode>(std::move(a));
}

NodePtr fexp(NodePtr a) {
    double ca;
    if (a->constant_value(&ca)) return make_const(std::exp(ca));
    return std::make_shared<ExpNode>(std::move(a));
}
NodePtr flog(NodePtr a) {
    double ca;
    if (a->constant_value(&ca)) return make_const(std::log(ca));
    return std::make_shared<LogNode>(std::move(a));
}
NodePtr fsin(NodePtr a) {
    double ca;
    if (a->constant_value(&ca)) return make_const(std::sin(ca));
    return std::make_shared<SinNode>(std::move(a));
}
NodePtr fcos(NodePtr a) {
    double ca;
    if (a->constant_value(&ca)) return make_const(std::cos(ca));
    return std::make_shared<CosNode>(std::move(a));
}
NodePtr fsqrt(NodePtr a) {
    double ca;
    if (a->constant_value(&ca)) return make_const(std::sqrt(ca));
    return std::make_shared<SqrtNode>(std::move(a));
}
NodePtr fpow(NodePtr a, double p) {
    double ca;
    if (a->constant_value(&ca)) return make_const(std::pow(ca, p));
    if (p == 0.0) return make_const(1.0);
    if (p == 1.0) return a;
    return std::make_shared<PowNode>(std::move(a), p);
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// ScalarField
// ---------------------------------------------------------------------------

using detail::NodePtr;

ScalarField::ScalarField(double c) : node_(detail::make_const(c)) {}

ScalarField ScalarField::constant(double c) { return ScalarField(c); }

ScalarField ScalarField::coord(int index) {
    if (index < 0 || index >= kMaxDim) throw Error("coordinate index out of range");
    return from_node(std::make_shared<detail::CoordNode>(index));
}

ScalarField ScalarField::function(std::function<double(const double*)> f,
                                  double fd_step, std::vector<Interval> box) {
    if (!(fd_step > 0)) throw Error("fd_step must be positive");
    return from_node(std::make_shared<detail::OpaqueNode>(std::move(f), fd_step,
                                                          std::move(box)));
}

ScalarField ScalarField::from_node(NodePtr n) {
    ScalarField f;
    f.node_ = std::move(n);
    return f;
}

bool ScalarField::analytic() const { return node_ && node_->analytic(); }

bool ScalarField::is_zero() const {
    double c;
    return node_ && node_->constant_value(&c) && c == 0.0;
}

double ScalarField::operator()(const Point& x) const { return (*this)(x.data()); }

double ScalarField::operator()(const double* x) const {
    if (!node_) throw Error("evaluating empty ScalarField");
    detail::EvalCtx ctx(x);
    return node_->value(ctx);
}

ScalarField ScalarField::partial(int i) const {
    if (!node_) throw Error("partial of empty ScalarField");
    return from_node(node_->derivative(i));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return ScalarField::from_node(detail::add(a.node(), b.node()));
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return ScalarField::from_node(detail::sub(a.node(), b.node()));
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return ScalarField::from_node(detail::mul(a.node(), b.node()));
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    return ScalarField::from_node(detail::divide(a.node(), b.node()));
}
ScalarField operator-(const ScalarField& a) {
    return ScalarField::from_node(detail::neg(a.node()));
}
ScalarField exp(const ScalarField& f) {
    return ScalarField::from_node(detail::fexp(f.node()));
}
ScalarField log(const ScalarField& f) {
    return ScalarField::from_node(detail::flog(f.node()));
}
ScalarField sin(const ScalarField& f) {
    return ScalarField::from_node(detail::fsin(f.node()));
}
ScalarField cos(const ScalarField& f) {
    return ScalarField::from_node(detail::fcos(f.node()));
}
ScalarField sqrt(const ScalarField& f) {
    return ScalarField::from_node(detail::fsqrt(f.node()));
}
ScalarField pow(const ScalarField& f, double p) {
    return ScalarField::from_node(detail::fpow(f.node(), p));
}

// ---------------------------------------------------------------------------
// Dense linear algebra helpers
// ---------------------------------------------------------------------------

double det_dense(int n, const double* a) {
    double m[kMaxDim * kMaxDim];
    std::copy(a, a + n * n, m);
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
            det = -det;
        }
        const double d = m[c * n + c];
        if (d == 0.0) return 0.0;
        det *= d;
        for (int r = c + 1; r < n; ++r) {
            const double f = m[r * n + c] / d;
            for (int k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
        }
    }
    return det;
}

void invert_dense(int n, const double* a, double* inv, double min_abs_det) {
    const double det = det_dense(n, a);
    if (!(std::abs(det) > min_abs_det))
        throw Error("singular matrix (|det| <= " + std::to_string(min_abs_det) + ")");
    double m[kMaxDim * 2 * kMaxDim];
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            m[r * 2 * n + c] = a[r * n + c];
            m[r * 2 * n + n + c] = (r == c) ? 1.0 : 0.0;
        }
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r * 2 * n + c]) > std::abs(m[piv * 2 * n + c])) piv = r;
        if (piv != c)
            for (int k = 0; k < 2 * n; ++k) std::swap(m[c * 2 * n + k], m[piv * 2 * n + k]);
        const double d = m[c * 2 * n + c];
        for (int k = 0; k < 2 * n; ++k) m[c * 2 * n + k] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m[r * 2 * n + c];
            if (f == 0.0) continue;
            for (int k = 0; k < 2 * n; ++k) m[r * 2 * n + k] -= f * m[c * 2 * n + k];
        }
    }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv[r * n + c] = m[r * 2 * n + n + c];
}

// ---------------------------------------------------------------------------
// MatrixField
// ---------------------------------------------------------------------------

namespace detail {
namespace {

struct MatrixSource {
    int n = 0;
    std::vector<NodePtr> entries;                  // row-major
    mutable std::vector<NodePtr> inverse_nodes;    // lazily built, shared
    mutable NodePtr det_node;
};

struct InverseEntryNode final : Node {
    std::shared_ptr<const MatrixSource> src;
    int i, j;
    InverseEntryNode(std::shared_ptr<const MatrixSource> s, int r, int c)
        : src(std::move(s)), i(r), j(c) {}

    double eval(EvalCtx& c) const override {
        const int n = src->n;
        double a[kMaxDim * kMaxDim], inv[kMaxDim * kMaxDim];
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q) a[r * n + q] = src->entries[r * n + q]->value(c);
        invert_dense(n, a, inv);
        return inv[i * n + j];
    }

    NodePtr make_derivative(int k) const override;

    bool analytic() const override {
        for (const auto& e : src->entries)
            if (!e->analytic()) return false;
        return true;
    }
};

NodePtr inverse_node(const std::shared_ptr<const MatrixSource>& src, int i, int j) {
    const int n = src->n;
    if (src->inverse_nodes.empty()) {
        src->inverse_nodes.resize(static_cast<size_t>(n * n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                src->inverse_nodes[static_cast<size_t>(r * n + c)] =
                    std::make_shared<InverseEntryNode>(src, r, c);
    }
    return src->inverse_nodes[static_cast<size_t>(i * n + j)];
}

NodePtr InverseEntryNode::make_derivative(int k) const {
    // d(A^-1)_ij = - sum_pq (A^-1)_ip dA_pq (A^-1)_qj
    const int n = src->n;
    NodePtr acc = make_const(0.0);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            NodePtr dA = src->entries[static_cast<size_t>(p * n + q)]->derivative(k);
            double cz;
            if (dA->constant_value(&cz) && cz == 0.0) continue;
            acc = add(acc, mul(mul(inverse_node(src, i, p), dA),
                               inverse_node(src, q, j)));
        }
    }
    return neg(acc);
}

struct DetNode final : Node {
    std::shared_ptr<const MatrixSource> src;
    explicit DetNode(std::shared_ptr<const MatrixSource> s) : src(std::move(s)) {}
    double eval(EvalCtx& c) const override {
        const int n = src->n;
        double a[kMaxDim * kMaxDim];
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q) a[r * n + q] = src->entries[r * n + q]->value(c);
        return det_dense(n, a);
    }
    NodePtr make_derivative(int k) const override {
        // d det = det * tr(A^-1 dA)
        const int n = src->n;
        NodePtr tr = make_const(0.0);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                NodePtr dA = src->entries[static_cast<size_t>(p * n + q)]->derivative(k);
                double cz;
                if (dA->constant_value(&cz) && cz == 0.0) continue;
                tr = add(tr, mul(inverse_node(src, q, p), dA));
            }
        if (!src->det_node) src->det_node = std::make_shared<DetNode>(src);
        return mul(src->det_node, tr);
    }
    bool analytic() const override {
        for (const auto& e : src->entries)
            if (!e->analytic()) return false;
        return true;
    }
};

}  // namespace
}  // namespace detail

struct MatrixField::Impl {
    std::shared_ptr<detail::MatrixSource> src;
    std::vector<ScalarField> fields;
};

MatrixField::MatrixField(int n, std::vector<ScalarField> entries)
    : impl_(std::make_shared<Impl>()) {
    if (n < 1 || n > kMaxDim) throw Error("MatrixField dimension must be 1..4");
    if (entries.size() != static_cast<size_t>(n * n))
        throw Error("MatrixField entry count mismatch");
    auto src = std::make_shared<detail::MatrixSource>();
    src->n = n;
    for (const auto& f : entries) {
        if (!f.valid()) throw Error("MatrixField entry is empty");
        src->entries.push_back(f.node());
    }
    impl_->src = std::move(src);
    impl_->fields = std::move(entries);
}

int MatrixField::n() const { return impl_ ? impl_->src->n : 0; }

const ScalarField& MatrixField::at(int i, int j) const {
    return impl_->fields[static_cast<size_t>(i * n() + j)];
}

ScalarField MatrixField::inverse_entry(int i, int j) const {
    return ScalarField::from_node(detail::inverse_node(impl_->src, i, j));
}

ScalarField MatrixField::det() const {
    auto& slot = impl_->src->det_node;
    if (!slot) slot = std::make_shared<detail::DetNode>(impl_->src);
    return ScalarField::from_node(slot);
}

std::vector<double> MatrixField::value(const Point& x) const {
    const int d = n();
    std::vector<double> out(static_cast<size_t>(d * d));
    detail::EvalCtx ctx(x.data());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out[static_cast<size_t>(i * d + j)] =
                impl_->src->entries[static_cast<size_t>(i * d + j)]->value(ctx);
    return out;
}

}  // namespace cartan
