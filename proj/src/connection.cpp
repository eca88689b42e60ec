#include "cartan/connection.hpp"

namespace cartan {

namespace {

inline size_t i3(int a, int b, int c, int d) {
    return static_cast<size_t>((a * d + b) * d + c);
}
inline size_t i4(int a, int b, int c, int e, int d) {
    return static_cast<size_t>(((a * d + b) * d + c) * d + e);
}

}  // namespace

// ---------------------------------------------------------------------------
// SpinConnection
// ---------------------------------------------------------------------------

SpinConnection::SpinConnection(Chart chart, std::vector<ScalarField> theta)
    : chart_(std::move(chart)), comp_(std::move(theta)) {
    const int d = chart_.dim();
    if (comp_.size() != static_cast<size_t>(d * d * d))
        throw Error("SpinConnection component count mismatch");
}

const ScalarField& SpinConnection::theta(int a, int b, int mu) const {
    return comp_[i3(a, b, mu, dim())];
}

Ten3 SpinConnection::at(const Point& x) const {
    chart_.require_inside(x);
    const int d = dim();
    auto vals = eval_fields(comp_, x);
    Ten3 out;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int m = 0; m < d; ++m) out.v[a][b][m] = vals[i3(a, b, m, d)];
    return out;
}

SpinConnection solve_spin_connection(const CoFrame& coframe) {
    const Chart& chart = coframe.chart();
    const int d = chart.dim();
    const ScalarField zero = ScalarField::constant(0.0);

    // D^a_{mu nu} = d_mu e^a_nu - d_nu e^a_mu  (mu < nu)
    std::vector<ScalarField> D(static_cast<size_t>(d * d * d), zero);
    auto Dat = [&](int a, int mu, int nu) -> ScalarField& {
        return D[i3(a, mu, nu, d)];
    };
    for (int a = 0; a < d; ++a)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = mu + 1; nu < d; ++nu)
                Dat(a, mu, nu) = coframe.e(a, nu).partial(mu) -
                                 coframe.e(a, mu).partial(nu);

    // Structure coefficients of the frame: [e_b, e_c] = C^a_{bc} e_a, via
    // C^a_{bc} = -de^a(e_b, e_c).
    std::vector<ScalarField> C(static_cast<size_t>(d * d * d), zero);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = b + 1; c < d; ++c) {
                ScalarField acc = zero;
                for (int mu = 0; mu < d; ++mu)
                    for (int nu = mu + 1; nu < d; ++nu) {
                        const ScalarField& dmn = Dat(a, mu, nu);
                        if (dmn.is_zero()) continue;
                        acc = acc + (coframe.dual(b, mu) * coframe.dual(c, nu) -
                                     coframe.dual(b, nu) * coframe.dual(c, mu)) *
                                        dmn;
                    }
                C[i3(a, b, c, d)] = -acc;
                C[i3(a, c, b, d)] = acc;
            }
        }
    }

    // Lowered structure coefficients and the Koszul-type closed form
    //   omega_{abc} = (1/2)(-C_{abc} + C_{cab} - C_{bca})
    // with omega^a_{bc} = <e^a, nabla_{e_c} e_b>; antisymmetry in the first
    // pair after lowering holds identically.
    auto Clow = [&](int a, int b, int c) {
        const double s = coframe.eta(a);
        return s > 0 ? C[i3(a, b, c, d)] : -C[i3(a, b, c, d)];
    };
    std::vector<ScalarField> theta(static_cast<size_t>(d * d * d), zero);
    const ScalarField half = ScalarField::constant(0.5);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                ScalarField w = half * (-Clow(a, b, c) + Clow(c, a, b) - Clow(b, c, a));
                if (coframe.eta(a) < 0) w = -w;  // raise the first index
                for (int mu = 0; mu < d; ++mu) {
                    ScalarField term = w * coframe.e(c, mu);
                    ScalarField& slot = theta[i3(a, b, mu, d)];
                    slot = slot.valid() && !slot.is_zero() ? slot + term : term;
                }
            }
        }
    }
    for (auto& f : theta)
        if (!f.valid()) f = zero;
    return SpinConnection(chart, std::move(theta));
}

double first_structural_residual(const CoFrame& coframe,
                                 const SpinConnection& theta, const Point& x) {
    const Chart& chart = coframe.chart();
    const int d = chart.dim();
    chart.require_inside(x);

    // de^a_{mu nu} + sum_c (Theta^a_{c mu} e^c_nu - Theta^a_{c nu} e^c_mu)
    double worst = 0.0;
    Ten3 th = theta.at(x);
    Mat4 e = coframe.matrix_at(x);

    for (int a = 0; a < d; ++a) {
        for (int mu = 0; mu < d; ++mu) {
            for (int nu = mu + 1; nu < d; ++nu) {
                double de = coframe.e(a, nu).partial(mu)(x) -
                            coframe.e(a, mu).partial(nu)(x);
                double tw = 0.0;
                for (int c = 0; c < d; ++c)
                    tw += th.v[a][c][mu] * e.v[c][nu] - th.v[a][c][nu] * e.v[c][mu];
                worst = std::max(worst, std::abs(de + tw));
            }
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// CurvatureField
// ---------------------------------------------------------------------------

CurvatureField::CurvatureField(CoFrame frame, std::vector<ScalarField> mixed)
    : frame_(std::move(frame)), mixed_(std::move(mixed)) {
    const int d = frame_.dim();
    if (mixed_.size() != static_cast<size_t>(d * d * d * d))
        throw Error("CurvatureField component count mismatch");
}

const ScalarField& CurvatureField::mixed(int a, int b, int mu, int nu) const {
    return mixed_[i4(a, b, mu, nu, dim())];
}

void CurvatureField::build_frame_comps() const {
    if (!fr_.empty()) return;
    const int d = dim();
    const ScalarField zero = ScalarField::constant(0.0);
    fr_.assign(static_cast<size_t>(d * d * d * d), zero);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = c + 1; e < d; ++e) {
                    ScalarField acc = zero;
                    for (int mu = 0; mu < d; ++mu)
                        for (int nu = mu + 1; nu < d; ++nu) {
                            const ScalarField& R = mixed_[i4(a, b, mu, nu, d)];
                            if (R.is_zero()) continue;
                            acc = acc + R * (frame_.dual(c, mu) * frame_.dual(e, nu) -
                                             frame_.dual(c, nu) * frame_.dual(e, mu));
                        }
                    fr_[i4(a, b, c, e, d)] = acc;
                    fr_[i4(a, b, e, c, d)] = -acc;
                }
}

ScalarField CurvatureField::frame_comp(int a, int b, int c, int d_) const {
    build_frame_comps();
    return fr_[i4(a, b, c, d_, dim())];
}

Ten4 CurvatureField::mixed_at(const Point& x) const {
    chart().require_inside(x);
    const int d = dim();
    auto vals = eval_fields(mixed_, x);
    Ten4 out;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n)
                    out.v[a][b][m][n] = vals[i4(a, b, m, n, d)];
    return out;
}

Ten4 CurvatureField::frame_at(const Point& x) const {
    chart().require_inside(x);
    build_frame_comps();
    const int d = dim();
    auto vals = eval_fields(fr_, x);
    Ten4 out;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    out.v[a][b][c][e] = vals[i4(a, b, c, e, d)];
    return out;
}

Ten4 CurvatureField::frame_lowered_at(const Point& x) const {
    Ten4 up = frame_at(x);
    const int d = dim();
    Ten4 out;
    for (int a = 0; a < d; ++a) {
        const double s = frame_.eta(a);
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) out.v[a][b][c][e] = s * up.v[a][b][c][e];
    }
    return out;
}

Ten4 CurvatureField::coord_lowered_at(const Point& x) const {
    Ten4 fl = frame_lowered_at(x);
    Mat4 e = frame_.matrix_at(x);
    const int d = dim();
    Ten4 out;
    for (int al = 0; al < d; ++al)
        for (int be = 0; be < d; ++be)
            for (int ga = 0; ga < d; ++ga)
                for (int de = 0; de < d; ++de) {
                    double acc = 0.0;
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b)
                            for (int c = 0; c < d; ++c)
                                for (int f = 0; f < d; ++f)
                                    acc += fl.v[a][b][c][f] * e.v[a][al] * e.v[b][be] *
                                           e.v[c][ga] * e.v[f][de];
                    out.v[al][be][ga][de] = acc;
                }
    return out;
}

CurvatureField curvature_two_forms(const CoFrame& coframe,
                                   const SpinConnection& theta) {
    if (coframe.chart() != theta.chart())
        throw Error("curvature_two_forms: chart mismatch");
    const int d = coframe.dim();
    const ScalarField zero = ScalarField::constant(0.0);
    std::vector<ScalarField> mixed(static_cast<size_t>(d * d * d * d), zero);

    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int mu = 0; mu < d; ++mu)
                for (int nu = mu + 1; nu < d; ++nu) {
                    ScalarField acc = theta.theta(a, b, nu).partial(mu) -
                                      theta.theta(a, b, mu).partial(nu);
                    for (int c = 0; c < d; ++c)
                        acc = acc + theta.theta(a, c, mu) * theta.theta(c, b, nu) -
                              theta.theta(a, c, nu) * theta.theta(c, b, mu);
                    mixed[i4(a, b, mu, nu, d)] = acc;
                    mixed[i4(a, b, nu, mu, d)] = -acc;
                }
    return CurvatureField(coframe, std::move(mixed));
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

CurvatureContraction contract_curvature(const CurvatureField& curv,
                                        const CoFrame& coframe) {
    const int d = coframe.dim();
    const ScalarField zero = ScalarField::constant(0.0);

    // Frame Ricci: Ric_{bd} = Riem^a_{b a d}
    std::vector<ScalarField> ric_f(static_cast<size_t>(d * d), zero);
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
            ScalarField acc = zero;
            for (int a = 0; a < d; ++a) {
                ScalarField t = curv.frame_comp(a, b, a, e);
                if (!t.is_zero()) acc = acc + t;
            }
            ric_f[static_cast<size_t>(b * d + e)] = acc;
        }

    // Coordinate Ricci: Ric_{mu nu} = Ric_{bd} e^b_mu e^d_nu
    std::vector<ScalarField> ric_c(static_cast<size_t>(d * d), zero);
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
            ScalarField acc = zero;
            for (int b = 0; b < d; ++b)
                for (int e = 0; e < d; ++e) {
                    const ScalarField& r = ric_f[static_cast<size_t>(b * d + e)];
                    if (r.is_zero()) continue;
                    acc = acc + r * coframe.e(b, mu) * coframe.e(e, nu);
                }
            ric_c[static_cast<size_t>(mu * d + nu)] = acc;
        }

    ScalarField scal = zero;
    for (int b = 0; b < d; ++b)
        scal = scal + ScalarField::constant(coframe.eta(b)) *
                          ric_f[static_cast<size_t>(b * d + b)];

    MatrixField g = coframe.metric();
    std::vector<ScalarField> ein(static_cast<size_t>(d * d), zero);
    const ScalarField half = ScalarField::constant(0.5);
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu)
            ein[static_cast<size_t>(mu * d + nu)] =
                ric_c[static_cast<size_t>(mu * d + nu)] - half * scal * g.at(mu, nu);

    CurvatureContraction out;
    out.ricci = MatrixField(d, std::move(ric_c));
    out.scal = scal;
    out.einstein = MatrixField(d, std::move(ein));
    return out;
}

// ---------------------------------------------------------------------------
// Christoffel symbols and the coordinate oracle
// ---------------------------------------------------------------------------

ChristoffelField::ChristoffelField(Chart chart, MatrixField g)
    : chart_(std::move(chart)), g_(std::move(g)) {
    const int d = chart_.dim();
    if (g_.n() != d) throw Error("ChristoffelField: dimension mismatch");
    const ScalarField half = ScalarField::constant(0.5);
    comp_.assign(static_cast<size_t>(d * d * d), ScalarField::constant(0.0));
    for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m)
            for (int n = m; n < d; ++n) {
                ScalarField acc = ScalarField::constant(0.0);
                for (int s = 0; s < d; ++s) {
                    ScalarField inner = g_.at(s, n).partial(m) +
                                        g_.at(s, m).partial(n) -
                                        g_.at(m, n).partial(s);
                    if (inner.is_zero()) continue;
                    acc = acc + g_.inverse_entry(l, s) * inner;
                }
                comp_[i3(l, m, n, d)] = half * acc;
                if (n != m) comp_[i3(l, n, m, d)] = comp_[i3(l, m, n, d)];
            }
}

const ScalarField& ChristoffelField::gamma(int l, int m, int n) const {
    return comp_[i3(l, m, n, chart_.dim())];
}

Ten3 ChristoffelField::at(const Point& x) const {
    chart_.require_inside(x);
    metric_inverse_at(g_, x);  // nondegeneracy guard
    const int d = chart_.dim();
    auto vals = eval_fields(comp_, x);
    Ten3 out;
    for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) out.v[l][m][n] = vals[i3(l, m, n, d)];
    return out;
}

CoordCurvature::CoordCurvature(ChristoffelField chr, std::vector<ScalarField> riem)
    : chr_(std::move(chr)), comp_(std::move(riem)) {}

const ScalarField& CoordCurvature::riem(int l, int s, int mu, int nu) const {
    return comp_[i4(l, s, mu, nu, chart().dim())];
}

Ten4 CoordCurvature::at(const Point& x) const {
    chart().require_inside(x);
    metric_inverse_at(chr_.metric(), x);  // nondegeneracy guard
    const int d = chart().dim();
    auto vals = eval_fields(comp_, x);
    Ten4 out;
    for (int l = 0; l < d; ++l)
        for (int s = 0; s < d; ++s)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) out.v[l][s][m][n] = vals[i4(l, s, m, n, d)];
    return out;
}

Ten4 CoordCurvature::lowered_at(const Point& x) const {
    Ten4 up = at(x);
    const int d = chart().dim();
    auto g = chr_.metric().value(x);
    Ten4 out;
    for (int l = 0; l < d; ++l)
        for (int s = 0; s < d; ++s)
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n) {
                    double acc = 0.0;
                    for (int k = 0; k < d; ++k)
                        acc += g[static_cast<size_t>(l * d + k)] * up.v[k][s][m][n];
                    out.v[l][s][m][n] = acc;
                }
    return out;
}

Ten4 CoordCurvature::frame_at(const CoFrame& coframe, const Point& x) const {
    Ten4 up = at(x);
    const int d = chart().dim();
    Mat4 e = coframe.matrix_at(x);
    Mat4 du = coframe.dual_at(x);
    Ten4 out;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int f = 0; f < d; ++f) {
                    double acc = 0.0;
                    for (int l = 0; l < d; ++l)
                        for (int s = 0; s < d; ++s)
                            for (int m = 0; m < d; ++m)
                                for (int n = 0; n < d; ++n)
                                    acc += e.v[a][l] * du.v[b][s] * du.v[c][m] *
                                           du.v[f][n] * up.v[l][s][m][n];
                    out.v[a][b][c][f] = acc;
                }
    return out;
}

CoordCurvature coordinate_riemann_oracle(const Chart& chart,
                                         const MatrixField& g) {
    ChristoffelField chr(chart, g);
    const int d = chart.dim();
    const ScalarField zero = ScalarField::constant(0.0);
    std::vector<ScalarField> R(static_cast<size_t>(d * d * d * d), zero);
    for (int l = 0; l < d; ++l)
        for (int s = 0; s < d; ++s)
            for (int m = 0; m < d; ++m)
                for (int n = m + 1; n < d; ++n) {
                    ScalarField acc = chr.gamma(l, n, s).partial(m) -
                                      chr.gamma(l, m, s).partial(n);
                    for (int k = 0; k < d; ++k)
                        acc = acc + chr.gamma(l, m, k) * chr.gamma(k, n, s) -
                              chr.gamma(l, n, k) * chr.gamma(k, m, s);
                    R[i4(l, s, m, n, d)] = acc;
                    R[i4(l, s, n, m, d)] = -acc;
                }
    return CoordCurvature(std::move(chr), std::move(R));
}

std::array<Ten4, kMaxDim> covariant_riemann_derivative(
    const CurvatureField& curv, const ChristoffelField& chr, const Point& x,
    double h) {
    const int d = curv.dim();
    std::array<Ten4, kMaxDim> out;
    Ten3 G = chr.at(x);
    Ten4 R0 = curv.coord_lowered_at(x);

    for (int e = 0; e < d; ++e) {
        // 4th-order central FD of the lowered Riemann in direction e
        Point xp = x, xm = x, xpp = x, xmm = x;
        xp[static_cast<size_t>(e)] += h;
        xm[static_cast<size_t>(e)] -= h;
        xpp[static_cast<size_t>(e)] += 2 * h;
        xmm[static_cast<size_t>(e)] -= 2 * h;
        Ten4 Rp = curv.coord_lowered_at(xp), Rm = curv.coord_lowered_at(xm);
        Ten4 Rpp = curv.coord_lowered_at(xpp), Rmm = curv.coord_lowered_at(xmm);

        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c)
                    for (int f = 0; f < d; ++f) {
                        double dR = (-Rpp.v[a][b][c][f] + 8 * Rp.v[a][b][c][f] -
                                     8 * Rm.v[a][b][c][f] + Rmm.v[a][b][c][f]) /
                                    (12 * h);
                        double corr = 0.0;
                        for (int k = 0; k < d; ++k) {
                            corr += G.v[k][e][a] * R0.v[k][b][c][f];
                            corr += G.v[k][e][b] * R0.v[a][k][c][f];
                            corr += G.v[k][e][c] * R0.v[a][b][k][f];
                            corr += G.v[k][e][f] * R0.v[a][b][c][k];
                        }
                        out[static_cast<size_t>(e)].v[a][b][c][f] = dR - corr;
                    }
    }
    return out;
}

}  // namespace cartan
