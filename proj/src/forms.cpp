#include "cartan/forms.hpp"

#include <algorithm>
#include <map>

namespace cartan {

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

IndexSet::IndexSet(int dim, int degree) : dim_(dim), degree_(degree) {
    if (degree < 0 || degree > dim) throw Error("form degree out of range");
    std::vector<int> cur(static_cast<size_t>(degree));
    // enumerate increasing tuples lexicographically
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == degree_) {
            tuples_.push_back(cur);
            return;
        }
        for (int i = start; i < dim_; ++i) {
            cur[static_cast<size_t>(k)] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
}

int IndexSet::rank(const std::vector<int>& idx) const {
    for (size_t r = 0; r < tuples_.size(); ++r)
        if (tuples_[r] == idx) return static_cast<int>(r);
    throw Error("index tuple not found (not strictly increasing?)");
}

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return sign;
}

// ---------------------------------------------------------------------------
// FormField
// ---------------------------------------------------------------------------

FormField::FormField(Chart chart, int degree, std::vector<ScalarField> comps)
    : chart_(std::move(chart)),
      degree_(degree),
      iset_(std::make_shared<IndexSet>(chart_.dim(), degree)) {
    if (comps.size() != static_cast<size_t>(iset_->size()))
        throw Error("FormField component count mismatch");
    comps_ = std::move(comps);
    for (const auto& c : comps_)
        if (!c.valid()) throw Error("FormField component is empty");
}

FormField FormField::zero(const Chart& chart, int degree) {
    IndexSet is(chart.dim(), degree);
    std::vector<ScalarField> z(static_cast<size_t>(is.size()),
                               ScalarField::constant(0.0));
    return FormField(chart, degree, std::move(z));
}

FormField FormField::coordinate(const Chart& chart, int i) {
    if (i < 0 || i >= chart.dim()) throw Error("coordinate index out of range");
    IndexSet is(chart.dim(), 1);
    std::vector<ScalarField> c(static_cast<size_t>(is.size()),
                               ScalarField::constant(0.0));
    c[static_cast<size_t>(i)] = ScalarField::constant(1.0);
    return FormField(chart, 1, std::move(c));
}

const ScalarField& FormField::comp(int rank) const {
    return comps_[static_cast<size_t>(rank)];
}

ScalarField FormField::comp(std::vector<int> idx) const {
    const int sign = sort_sign(idx);
    if (sign == 0) return ScalarField::constant(0.0);
    const ScalarField& base = comps_[static_cast<size_t>(iset_->rank(idx))];
    return sign > 0 ? base : -base;
}

std::vector<double> FormField::values(const Point& x) const {
    chart_.require_inside(x);
    std::vector<double> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c(x));
    return out;
}

double FormField::value(const Point& x, std::vector<int> idx) const {
    chart_.require_inside(x);
    const int sign = sort_sign(idx);
    if (sign == 0) return 0.0;
    return sign * comps_[static_cast<size_t>(iset_->rank(idx))](x);
}

FormField FormField::operator+(const FormField& o) const {
    if (chart_ != o.chart_ || degree_ != o.degree_)
        throw Error("form addition: chart or degree mismatch");
    std::vector<ScalarField> c;
    c.reserve(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) c.push_back(comps_[i] + o.comps_[i]);
    return FormField(chart_, degree_, std::move(c));
}

FormField FormField::operator-(const FormField& o) const {
    if (chart_ != o.chart_ || degree_ != o.degree_)
        throw Error("form subtraction: chart or degree mismatch");
    std::vector<ScalarField> c;
    c.reserve(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) c.push_back(comps_[i] - o.comps_[i]);
    return FormField(chart_, degree_, std::move(c));
}

FormField FormField::scaled(const ScalarField& s) const {
    std::vector<ScalarField> c;
    c.reserve(comps_.size());
    for (const auto& f : comps_) c.push_back(s * f);
    return FormField(chart_, degree_, std::move(c));
}

// ---------------------------------------------------------------------------
// wedge
// ---------------------------------------------------------------------------

FormField wedge(const FormField& a, const FormField& b) {
    if (a.chart() != b.chart()) throw Error("wedge: chart mismatch");
    const int dim = a.chart().dim();
    const int k = a.degree(), l = b.degree();
    if (k + l > dim) throw Error("wedge: degree overflow (k+l > dim)");

    IndexSet out_set(dim, k + l);
    std::vector<ScalarField> out(static_cast<size_t>(out_set.size()),
                                 ScalarField::constant(0.0));

    // (a ^ b)_I = sum over splits of I into J (|J|=k) and K with shuffle sign.
    for (int r = 0; r < out_set.size(); ++r) {
        const std::vector<int>& I = out_set.tuple(r);
        const int n = k + l;
        std::vector<int> choose(static_cast<size_t>(k));
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == k) {
                std::vector<int> J, K;
                std::vector<bool> used(static_cast<size_t>(n), false);
                for (int c : choose) used[static_cast<size_t>(c)] = true;
                int sign = 1;
                // sign of the permutation moving (J,K) back to sorted I:
                // count inversions of the concatenated position list
                std::vector<int> posn;
                for (int c : choose) posn.push_back(c);
                for (int p = 0; p < n; ++p)
                    if (!used[static_cast<size_t>(p)]) posn.push_back(p);
                for (size_t u = 0; u < posn.size(); ++u)
                    for (size_t v = u + 1; v < posn.size(); ++v)
                        if (posn[u] > posn[v]) sign = -sign;
                for (int p = 0; p < n; ++p)
                    (used[static_cast<size_t>(p)] ? J : K).push_back(I[static_cast<size_t>(p)]);
                ScalarField term = a.comp(a.indices().rank(J)) * b.comp(b.indices().rank(K));
                out[static_cast<size_t>(r)] =
                    out[static_cast<size_t>(r)] +
                    (sign > 0 ? term : -term);
                return;
            }
            for (int c = start; c < n; ++c) {
                choose[static_cast<size_t>(depth)] = c;
                rec(c + 1, depth + 1);
            }
        };
        if (k == 0) {
            out[static_cast<size_t>(r)] = a.comp(0) * b.comp(r);
        } else if (l == 0) {
            out[static_cast<size_t>(r)] = a.comp(r) * b.comp(0);
        } else {
            rec(0, 0);
        }
    }
    return FormField(a.chart(), k + l, std::move(out));
}

// ---------------------------------------------------------------------------
// exterior derivative
// ---------------------------------------------------------------------------

FormField exterior_derivative(const FormField& a) {
    const int dim = a.chart().dim();
    const int k = a.degree();
    if (k >= dim) throw Error("exterior_derivative: degree must be < dim");

    IndexSet out_set(dim, k + 1);
    std::vector<ScalarField> out(static_cast<size_t>(out_set.size()),
                                 ScalarField::constant(0.0));
    // (da)_{m0..mk} = sum_i (-1)^i d_{mi} a_{m0..^mi..mk}
    for (int r = 0; r < out_set.size(); ++r) {
        const std::vector<int>& I = out_set.tuple(r);
        ScalarField acc = ScalarField::constant(0.0);
        for (int i = 0; i <= k; ++i) {
            std::vector<int> rest;
            for (int j = 0; j <= k; ++j)
                if (j != i) rest.push_back(I[static_cast<size_t>(j)]);
            ScalarField d = a.comp(a.indices().rank(rest)).partial(I[static_cast<size_t>(i)]);
            acc = (i % 2 == 0) ? acc + d : acc - d;
        }
        out[static_cast<size_t>(r)] = acc;
    }
    return FormField(a.chart(), k + 1, std::move(out));
}

// ---------------------------------------------------------------------------
// Hodge dual on a 2+1 chart
// ---------------------------------------------------------------------------

namespace {

int eps3(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    // parity of permutation (a,b,c) of (0,1,2)
    int sign = 1;
    int v[3] = {a, b, c};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            }
    return sign;
}

}  // namespace

FormField hodge_dual_2d(const FormField& a, const MatrixField& g) {
    const Chart& chart = a.chart();
    if (chart.dim() != 3)
        throw Error("hodge_dual_2d requires a 3-dimensional (2+1) chart");
    if (g.n() != 3) throw Error("hodge_dual_2d: metric dimension mismatch");
    if (!chart.lorentzian()) throw Error("hodge_dual_2d: chart must be Lorentzian");

    // volume density sqrt(-det g); degeneracy surfaces as Error at eval time
    ScalarField vol = sqrt(-g.det());
    const int k = a.degree();
    if (k != 1 && k != 2)
        throw Error("hodge_dual_2d implemented for degrees 1 and 2");

    // raise all indices of a with g^{..}, then (*a)_J = (1/k!) a^I eps_{I J}
    if (k == 1) {
        // (*a)_{mn} = a^s eps_{s m n},  eps_{012} = +vol
        IndexSet out_set(3, 2);
        std::vector<ScalarField> out;
        for (int r = 0; r < out_set.size(); ++r) {
            const auto& J = out_set.tuple(r);
            ScalarField acc = ScalarField::constant(0.0);
            for (int s = 0; s < 3; ++s) {
                const int e = eps3(s, J[0], J[1]);
                if (e == 0) continue;
                ScalarField a_up = ScalarField::constant(0.0);
                for (int m = 0; m < 3; ++m) {
                    std::vector<int> idx{m};
                    a_up = a_up + g.inverse_entry(s, m) * a.comp(idx);
                }
                acc = acc + ScalarField::constant(e) * a_up;
            }
            out.push_back(vol * acc);
        }
        return FormField(chart, 2, std::move(out));
    }

    // k == 2: (*a)_m = (1/2) a^{st} eps_{s t m}
    IndexSet out_set(3, 1);
    std::vector<ScalarField> out;
    for (int r = 0; r < out_set.size(); ++r) {
        const int m = out_set.tuple(r)[0];
        ScalarField acc = ScalarField::constant(0.0);
        for (int s = 0; s < 3; ++s) {
            for (int t = 0; t < 3; ++t) {
                const int e = eps3(s, t, m);
                if (e == 0) continue;
                // a^{st} = g^{sp} g^{tq} a_{pq}
                ScalarField a_up = ScalarField::constant(0.0);
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q) {
                        std::vector<int> idx{p, q};
                        ScalarField comp = a.comp(idx);
                        if (comp.is_zero()) continue;
                        a_up = a_up + g.inverse_entry(s, p) * g.inverse_entry(t, q) * comp;
                    }
                acc = acc + ScalarField::constant(0.5 * e) * a_up;
            }
        }
        out.push_back(vol * acc);
    }
    return FormField(chart, 1, std::move(out));
}

}  // namespace cartan
