#include "cartan/frame.hpp"

namespace cartan {

std::vector<double> eval_fields(const std::vector<ScalarField>& fields,
                                const Point& x) {
    detail::EvalCtx ctx(x.data());
    std::vector<double> out;
    out.reserve(fields.size());
    for (const auto& f : fields) {
        if (!f.valid()) throw Error("eval_fields: empty field");
        out.push_back(f.node()->value(ctx));
    }
    return out;
}

CoFrame::CoFrame(Chart chart, std::vector<ScalarField> e_comp)
    : chart_(std::move(chart)), comp_(std::move(e_comp)) {
    const int d = chart_.dim();
    if (comp_.size() != static_cast<size_t>(d * d))
        throw Error("CoFrame component count mismatch");
    std::vector<ScalarField> rows = comp_;
    mat_ = MatrixField(d, std::move(rows));
}

const ScalarField& CoFrame::e(int a, int mu) const {
    return comp_[static_cast<size_t>(a * dim() + mu)];
}

ScalarField CoFrame::dual(int a, int mu) const {
    // e^a_mu is (row a, col mu); the dual e_a^mu is the inverse transposed:
    // sum_mu e^a_mu e_b^mu = delta^a_b  =>  e_a^mu = (M^-1)_{mu a}.
    return mat_.inverse_entry(mu, a);
}

FormField CoFrame::form(int a) const {
    std::vector<ScalarField> c;
    for (int mu = 0; mu < dim(); ++mu) c.push_back(e(a, mu));
    return FormField(chart_, 1, std::move(c));
}

Mat4 CoFrame::matrix_at(const Point& x) const {
    chart_.require_inside(x);
    const int d = dim();
    auto vals = eval_fields(comp_, x);
    double m[kMaxDim * kMaxDim];
    for (int i = 0; i < d * d; ++i) m[i] = vals[static_cast<size_t>(i)];
    if (!(std::abs(det_dense(d, m)) > 1e-12))
        throw Error("singular frame matrix at sample point");
    Mat4 out;
    for (int a = 0; a < d; ++a)
        for (int mu = 0; mu < d; ++mu) out.v[a][mu] = m[a * d + mu];
    return out;
}

Mat4 CoFrame::dual_at(const Point& x) const {
    const Mat4 m = matrix_at(x);
    const int d = dim();
    double a[kMaxDim * kMaxDim], inv[kMaxDim * kMaxDim];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i * d + j] = m.v[i][j];
    invert_dense(d, a, inv);
    Mat4 out;
    // inv is (e^a_mu)^-1 with rows mu; dual e_a^mu = inv_{mu a} transposed
    for (int aa = 0; aa < d; ++aa)
        for (int mu = 0; mu < d; ++mu) out.v[aa][mu] = inv[mu * d + aa];
    return out;
}

MatrixField CoFrame::metric() const {
    const int d = dim();
    std::vector<ScalarField> g(static_cast<size_t>(d * d),
                               ScalarField::constant(0.0));
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
            ScalarField acc = ScalarField::constant(0.0);
            for (int a = 0; a < d; ++a)
                acc = acc + ScalarField::constant(eta(a)) * e(a, mu) * e(a, nu);
            g[static_cast<size_t>(mu * d + nu)] = acc;
        }
    return MatrixField(d, std::move(g));
}

MatrixField metric_from_entries(const Chart& chart,
                                std::vector<ScalarField> entries) {
    const int d = chart.dim();
    if (entries.size() != static_cast<size_t>(d * d))
        throw Error("metric entry count mismatch");
    return MatrixField(d, std::move(entries));
}

Mat4 metric_inverse_at(const MatrixField& g, const Point& x) {
    const int d = g.n();
    auto vals = g.value(x);
    double a[kMaxDim * kMaxDim], inv[kMaxDim * kMaxDim];
    for (int i = 0; i < d * d; ++i) a[i] = vals[static_cast<size_t>(i)];
    invert_dense(d, a, inv);
    Mat4 out;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.v[i][j] = inv[i * d + j];
    return out;
}

CoFrame coframe_from_metric(const Chart& chart, const MatrixField& g) {
    const int d = chart.dim();
    if (g.n() != d) throw Error("coframe_from_metric: dimension mismatch");
    const auto& sig = chart.signature();

    // g = L eta L^T with L lower triangular, eta = diag(signature).
    // Column-by-column; all entries are field expressions, hence smooth
    // wherever the factorization exists.
    std::vector<ScalarField> L(static_cast<size_t>(d * d),
                               ScalarField::constant(0.0));
    auto Lat = [&](int i, int j) -> ScalarField& {
        return L[static_cast<size_t>(i * d + j)];
    };
    for (int j = 0; j < d; ++j) {
        const double sj = sig[static_cast<size_t>(j)];
        ScalarField diag = g.at(j, j);
        for (int k = 0; k < j; ++k)
            diag = diag - ScalarField::constant(sig[static_cast<size_t>(k)]) *
                              Lat(j, k) * Lat(j, k);
        // s_j * L_jj^2 = diag  =>  L_jj = sqrt(s_j * diag)
        ScalarField ljj = sqrt(ScalarField::constant(sj) * diag);
        Lat(j, j) = ljj;
        for (int i = j + 1; i < d; ++i) {
            ScalarField off = g.at(i, j);
            for (int k = 0; k < j; ++k)
                off = off - ScalarField::constant(sig[static_cast<size_t>(k)]) *
                                Lat(i, k) * Lat(j, k);
            Lat(i, j) = off / (ScalarField::constant(sj) * ljj);
        }
    }

    // e^a_mu = L_{mu a}
    std::vector<ScalarField> e(static_cast<size_t>(d * d),
                               ScalarField::constant(0.0));
    for (int a = 0; a < d; ++a)
        for (int mu = 0; mu < d; ++mu)
            e[static_cast<size_t>(a * d + mu)] = Lat(mu, a);
    return CoFrame(chart, std::move(e));
}

}  // namespace cartan
