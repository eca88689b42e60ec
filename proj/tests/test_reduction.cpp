/// Kaluza-Klein reduction against the direct 4d pipeline: coframe assembly,
/// Ricci projections, reduced Riemann blocks, scalar curvature, twist
/// potential, and the Einstein / wave-map residuals.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cartan/expr.hpp"
#include "cartan/fixtures.hpp"
#include "cartan/reduction.hpp"
#include "cartan/weyl.hpp"

using namespace cartan;

namespace {

Chart chart3_box() {
    return Chart({"t", "x1", "x2"}, {-1, 1, 1},
                 {Interval{0.4, 6.0}, Interval{-3, 3}, Interval{-3, 3}});
}

MatrixField flat3(const Chart& c) {
    std::vector<ScalarField> g(9, ScalarField::constant(0.0));
    g[0] = ScalarField::constant(-1.0);
    g[4] = ScalarField::constant(1.0);
    g[8] = ScalarField::constant(1.0);
    (void)c;
    return MatrixField(3, std::move(g));
}

KKData kasner_kk(double p1, double p2, double p3) {
    Chart c({"t", "x1", "x2"}, {-1, 1, 1},
            {Interval{0.3, 8.0}, Interval{-5, 5}, Interval{-5, 5}});
    ScalarField t = ScalarField::coord(0);
    std::vector<ScalarField> g(9, ScalarField::constant(0.0));
    g[0] = ScalarField::constant(-1.0);
    g[4] = pow(t, 2 * p1);
    g[8] = pow(t, 2 * p2);
    return KKData::make_polarized(c, ScalarField::constant(p3) * log(t),
                                  MatrixField(3, std::move(g)));
}

/// A generic non-polarized fixture: smooth gamma, A, and curved gtilde.
KKData synthetic_kk() {
    Chart c = chart3_box();
    ScalarField t = ScalarField::coord(0), x = ScalarField::coord(1),
                y = ScalarField::coord(2);
    ScalarField gamma = ScalarField::constant(0.1) * t +
                        ScalarField::constant(0.05) * sin(x) * cos(y);
    FormField A(c, 1,
                {ScalarField::constant(0.05) * sin(y),
                 ScalarField::constant(0.2) * x * y,
                 ScalarField::constant(0.1) * x});
    std::vector<ScalarField> g(9, ScalarField::constant(0.0));
    g[0] = ScalarField::constant(-1.0) -
           ScalarField::constant(0.05) * cos(x) * cos(x);
    g[4] = ScalarField::constant(1.0) + ScalarField::constant(0.1) * sin(t + y) *
                                            sin(t + y);
    g[8] = ScalarField::constant(1.0) + ScalarField::constant(0.08) * x * x /
                                            (ScalarField::constant(10.0) + x * x);
    g[1] = ScalarField::constant(0.03) * sin(x);
    g[3] = g[1];
    return KKData::make(c, gamma, A, MatrixField(3, std::move(g)));
}

Point p3_(double t, double x, double y) { return make_point({t, x, y}); }
Point p4_(double t, double x, double y, double z) { return make_point({t, x, y, z}); }

/// 4d Ricci (coordinate components) from the Christoffel oracle.
Mat4 oracle_ricci4(const CoordCurvature& oc, const Point& x4) {
    Ten4 R = oc.at(x4);
    Mat4 ric;
    for (int s = 0; s < 4; ++s)
        for (int n = 0; n < 4; ++n) {
            double acc = 0;
            for (int m = 0; m < 4; ++m) acc += R.v[m][s][m][n];
            ric.v[s][n] = acc;
        }
    return ric;
}

double max_abs4(const Ten4& a) {
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    worst = std::max(worst, std::abs(a.v[i][j][k][l]));
    return worst;
}

}  // namespace

TEST_CASE("assemble_kk_coframe: trivial, Kasner, and gauge-potential cases") {
    SUBCASE("gamma=0, A=0, flat gtilde gives the Minkowski4 coframe") {
        Chart c = chart3_box();
        KKData kk = KKData::make_polarized(c, ScalarField::constant(0.0), flat3(c));
        CoFrame cf = assemble_kk_coframe(kk);
        Mat4 m = cf.matrix_at(p4_(1.0, 0.2, -0.3, 0.7));
        for (int a = 0; a < 4; ++a)
            for (int mu = 0; mu < 4; ++mu)
                CHECK(m.v[a][mu] == doctest::Approx(a == mu ? 1.0 : 0.0));
    }

    SUBCASE("Kasner data reassembles the Kasner 4-metric") {
        const double p1 = 2.0 / 3, p2 = 2.0 / 3, p3 = -1.0 / 3;
        KKData kk = kasner_kk(p1, p2, p3);
        CoFrame cf = assemble_kk_coframe(kk);
        MatrixField recon = cf.metric();
        Fixture kas = kasner(p1, p2, p3);
        Point q = p4_(1.7, 0.4, -0.8, 2.0);
        auto a = recon.value(q), b = kas.metric.value(q);
        for (size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
    }

    SUBCASE("A = b x1 dt produces gbar_{t x3} = b x1") {
        Chart c = chart3_box();
        const double b = 0.7;
        FormField A(c, 1,
                    {ScalarField::constant(b) * ScalarField::coord(1),
                     ScalarField::constant(0.0), ScalarField::constant(0.0)});
        KKData kk = KKData::make(c, ScalarField::constant(0.0), A, flat3(c));
        CoFrame cf = assemble_kk_coframe(kk);
        MatrixField recon = cf.metric();
        Point q = p4_(1.0, 1.3, 0.2, 0.0);
        CHECK(recon.value(q)[static_cast<size_t>(0 * 4 + 3)] ==
              doctest::Approx(b * 1.3).epsilon(1e-12));
        // and matches the direct assembled metric field everywhere sampled
        auto r = recon.value(q), m = kk.metric4().value(q);
        for (size_t i = 0; i < r.size(); ++i)
            CHECK(r[i] == doctest::Approx(m[i]).epsilon(1e-12));
    }

    SUBCASE("degenerate gtilde errors") {
        Chart c = chart3_box();
        std::vector<ScalarField> gz(9, ScalarField::constant(0.0));
        KKData kk = KKData::make_polarized(c, ScalarField::constant(0.0),
                                           MatrixField(3, std::move(gz)));
        CHECK_THROWS_AS(
            [&] {
                CoFrame cf = assemble_kk_coframe(kk);
                (void)cf.matrix_at(p4_(1, 0, 0, 0));
            }(),
            Error);
    }
}

TEST_CASE("reduced connection solves the first structural equation") {
    for (KKData kk : {kasner_kk(2.0 / 3, 2.0 / 3, -1.0 / 3), synthetic_kk()}) {
        ReducedRiemann rr = reduced_riemann(kk);
        Point q = p4_(1.2, 0.5, -0.4, 0.3);
        CHECK(first_structural_residual(rr.coframe(), rr.connection(), q) < 1e-9);
    }
}

TEST_CASE("ricci_projections against the 4d oracle") {
    SUBCASE("gamma=0, A=0 reduces to the 3d Ricci; cross and fiber vanish") {
        Chart c = chart3_box();
        ScalarField t = ScalarField::coord(0), x = ScalarField::coord(1);
        std::vector<ScalarField> g(9, ScalarField::constant(0.0));
        g[0] = ScalarField::constant(-1.0) - ScalarField::constant(0.05) * x * x /
                                                 (ScalarField::constant(4.0) + x * x);
        g[4] = ScalarField::constant(1.0) + ScalarField::constant(0.1) * sin(t);
        g[8] = ScalarField::constant(1.0);
        MatrixField gt(3, g);
        KKData kk = KKData::make_polarized(c, ScalarField::constant(0.0), gt);
        RicciProjections pr = ricci_projections(kk);

        CoordCurvature oc3 = coordinate_riemann_oracle(c, gt);
        Point q = p3_(1.1, 0.6, -0.2);
        Ten4 R3 = oc3.at(q);
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
                double ric3 = 0;
                for (int k = 0; k < 3; ++k) ric3 += R3.v[k][m][k][n];
                CHECK(pr.ric_munu.at(m, n)(q) == doctest::Approx(ric3).epsilon(1e-10));
            }
        for (int m = 0; m < 3; ++m) CHECK(std::abs(pr.ric_mu3[static_cast<size_t>(m)](q)) < 1e-12);
        CHECK(std::abs(pr.ric_33(q)) < 1e-12);
    }

    SUBCASE("Kasner reduction: all projections vanish (vacuum)") {
        KKData kk = kasner_kk(2.0 / 3, 2.0 / 3, -1.0 / 3);
        RicciProjections pr = ricci_projections(kk);
        for (Point q : {p3_(1.0, 0.3, -0.2), p3_(2.5, -1.0, 0.4)}) {
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n)
                    CHECK(std::abs(pr.ric_munu.at(m, n)(q)) < 1e-6);
            for (int m = 0; m < 3; ++m)
                CHECK(std::abs(pr.ric_mu3[static_cast<size_t>(m)](q)) < 1e-6);
            CHECK(std::abs(pr.ric_33(q)) < 1e-6);
        }
    }

    SUBCASE("general A: projections equal horizontally-projected 4d Ricci") {
        KKData kk = synthetic_kk();
        RicciProjections pr = ricci_projections(kk);
        CoordCurvature oc4 = coordinate_riemann_oracle(kk.chart4(), kk.metric4());
        for (Point q3 : {p3_(1.0, 0.5, -0.5), p3_(2.0, -1.2, 0.8)}) {
            Point q4 = q3;
            q4[3] = 0.37;  // fields are x3-independent
            Mat4 ric = oracle_ricci4(oc4, q4);
            auto Aval = [&](int m) { return kk.A.comp(m)(q3); };
            // horizontal projections: subtract A-flows of the fiber leg
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) {
                    const double want = ric.v[m][n] - Aval(m) * ric.v[3][n] -
                                        Aval(n) * ric.v[m][3] +
                                        Aval(m) * Aval(n) * ric.v[3][3];
                    CHECK(pr.ric_munu.at(m, n)(q3) ==
                          doctest::Approx(want).epsilon(1e-5).scale(1.0));
                }
            for (int m = 0; m < 3; ++m) {
                const double want = ric.v[m][3] - Aval(m) * ric.v[3][3];
                CHECK(pr.ric_mu3[static_cast<size_t>(m)](q3) ==
                      doctest::Approx(want).epsilon(1e-5).scale(1.0));
            }
            CHECK(pr.ric_33(q3) == doctest::Approx(ric.v[3][3]).epsilon(1e-5).scale(1.0));
        }
    }
}

TEST_CASE("reduced_riemann blocks against the 4d pipeline") {
    SUBCASE("polarized: pure block equals the 3d Riemann of gtilde") {
        KKData kk = kasner_kk(2.0 / 3, 2.0 / 3, -1.0 / 3);
        ReducedRiemann rr = reduced_riemann(kk);
        CoFrame triad = coframe_from_metric(kk.chart3, kk.gtilde);
        CurvatureField cv3 =
            curvature_two_forms(triad, solve_spin_connection(triad));
        Point q3 = p3_(1.4, 0.2, -0.6);
        Point q4 = q3;
        q4[3] = 1.0;
        Ten4 full = rr.frame_at(q4);
        Ten4 three = cv3.frame_at(q3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    for (int d = 0; d < 3; ++d)
                        CHECK(std::abs(full.v[a][b][c][d] - three.v[a][b][c][d]) < 1e-10);
    }

    SUBCASE("Kasner fiber block: closed form and the -4/9 value") {
        const double p3 = -1.0 / 3;
        KKData kk = kasner_kk(2.0 / 3, 2.0 / 3, p3);
        ReducedRiemann rr = reduced_riemann(kk);
        Point q3 = p3_(1.0, 0.0, 0.0);
        Mat4 closed = rr.fiber_block_closed_at(q3);
        CHECK(closed.v[0][0] == doctest::Approx(p3 * (1 - p3)).epsilon(1e-12));
        CHECK(closed.v[0][0] == doctest::Approx(-4.0 / 9.0).epsilon(1e-12));
        Point q4 = q3;
        q4[3] = 0.0;
        Ten4 full = rr.frame_at(q4);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(full.v[3][a][3][b] == doctest::Approx(closed.v[a][b]).epsilon(1e-9));
    }

    SUBCASE("general A: all frame blocks match the 4d oracle; gauge shift") {
        KKData kk = synthetic_kk();
        ReducedRiemann rr = reduced_riemann(kk);
        CoordCurvature oc4 = coordinate_riemann_oracle(kk.chart4(), kk.metric4());
        Point q3 = p3_(1.3, 0.7, -0.9);
        Point q4 = q3;
        q4[3] = -0.21;
        Ten4 mine = rr.frame_at(q4);
        Ten4 oracle = oc4.frame_at(rr.coframe(), q4);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d)
                        CHECK(mine.v[a][b][c][d] ==
                              doctest::Approx(oracle.v[a][b][c][d]).epsilon(1e-7).scale(1.0));

        // fiber closed form agrees with the pipeline block
        Mat4 closed = rr.fiber_block_closed_at(q3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(mine.v[3][a][3][b] == doctest::Approx(closed.v[a][b]).epsilon(1e-8).scale(1.0));

        // gauge covariance: A -> A + d(lambda) leaves every block unchanged
        ScalarField lam = ScalarField::constant(0.3) * ScalarField::coord(1) *
                          ScalarField::coord(2);
        FormField dlam(kk.chart3, 1, {lam.partial(0), lam.partial(1), lam.partial(2)});
        KKData shifted = KKData::make(kk.chart3, kk.gamma, kk.A + dlam, kk.gtilde);
        ReducedRiemann rs = reduced_riemann(shifted);
        Ten4 shifted_blocks = rs.frame_at(q4);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d)
                        CHECK(std::abs(mine.v[a][b][c][d] - shifted_blocks.v[a][b][c][d]) < 1e-8);
    }
}

TEST_CASE("reduced_scalar_curvature matches the 4d oracle") {
    SUBCASE("flat polarized is zero") {
        Chart c = chart3_box();
        KKData kk = KKData::make_polarized(c, ScalarField::constant(0.0), flat3(c));
        CHECK(std::abs(reduced_scalar_curvature(kk)(p3_(1, 0, 0))) < 1e-14);
    }

    SUBCASE("Kasner is vacuum") {
        KKData kk = kasner_kk(2.0 / 3, 2.0 / 3, -1.0 / 3);
        ScalarField s = reduced_scalar_curvature(kk);
        CHECK(std::abs(s(p3_(1.0, 0.2, 0.3))) < 1e-6);
        CHECK(std::abs(s(p3_(3.0, -0.4, 1.0))) < 1e-6);
    }

    SUBCASE("gamma bump and general A match the oracle") {
        for (int variant = 0; variant < 2; ++variant) {
            Chart c = chart3_box();
            KKData kk =
                variant == 0
                    ? KKData::make_polarized(
                          c,
                          ScalarField::constant(0.1) * sin(ScalarField::coord(1)),
                          flat3(c))
                    : synthetic_kk();
            ScalarField s = reduced_scalar_curvature(kk);
            CoordCurvature oc4 = coordinate_riemann_oracle(kk.chart4(), kk.metric4());
            Point q3 = p3_(1.2, 0.4, -0.3);
            Point q4 = q3;
            q4[3] = 0.5;
            Mat4 ric = oracle_ricci4(oc4, q4);
            Mat4 gi = metric_inverse_at(kk.metric4(), q4);
            double scal = 0;
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) scal += gi.v[m][n] * ric.v[m][n];
            CHECK(s(q3) == doctest::Approx(scal).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("twist_potential: trivial, constant-F, and non-closed error") {
    Chart c = chart3_box();

    SUBCASE("A = 0 gives omega = 0") {
        KKData kk = KKData::make_polarized(c, ScalarField::constant(0.0), flat3(c));
        TwistData tw = twist_potential(kk, p3_(1.0, 0.0, 0.0));
        CHECK(tw.omega(p3_(2.0, 1.0, -1.0)) == doctest::Approx(0.0));
        CHECK(tw.dG_residual < 1e-14);
    }

    SUBCASE("constant F: omega linear, domega = G, two paths agree") {
        const double b = 0.8;
        FormField A(c, 1,
                    {ScalarField::constant(0.0),
                     ScalarField::constant(0.0),
                     ScalarField::constant(b) * ScalarField::coord(1)});
        KKData kk = KKData::make(c, ScalarField::constant(0.0), A, flat3(c));
        TwistData tw = twist_potential(kk, p3_(1.0, 0.0, 0.0));
        CHECK(tw.dG_residual < 1e-12);

        // F = b dx1 ^ dx2, G = *F: for flat 2+1 metric, *(dx1^dx2) = dt
        // (orientation eps_{012} = +1), so omega = b (t - t0).
        Point q = p3_(2.4, 1.1, -0.7);
        CHECK(tw.omega(q) == doctest::Approx(b * (q[0] - 1.0)).epsilon(1e-12));
        CHECK(tw.path_mismatch(q) < 1e-10);

        // d omega = G by finite differences
        const double h = 1e-4;
        for (int m = 0; m < 3; ++m) {
            Point qp = q, qm = q;
            qp[static_cast<size_t>(m)] += h;
            qm[static_cast<size_t>(m)] -= h;
            const double d = (tw.omega(qp) - tw.omega(qm)) / (2 * h);
            CHECK(std::abs(d - tw.G.value(q, {m})) < 1e-8);
        }
    }

    SUBCASE("dG != 0 raises with the residual in the message") {
        const double b = 0.8;
        FormField A(c, 1,
                    {ScalarField::constant(0.0), ScalarField::constant(0.0),
                     ScalarField::constant(b) * ScalarField::coord(1)});
        ScalarField gamma = ScalarField::constant(0.3) * ScalarField::coord(1);
        KKData kk = KKData::make(c, gamma, A, flat3(c));
        CHECK_THROWS_WITH_AS(twist_potential(kk, p3_(1.0, 0.0, 0.0)),
                             doctest::Contains("dG residual"), Error);
    }
}

TEST_CASE("wavemap_residuals") {
    Chart c = chart3_box();

    SUBCASE("constants on Minkowski3: everything vanishes") {
        WaveMapResiduals wr = wavemap_residuals(flat3(c), c, ScalarField::constant(0.4),
                                                ScalarField::constant(-1.2));
        Point q = p3_(1.0, 0.3, 0.2);
        CHECK(std::abs(wr.r_gamma(q)) < 1e-14);
        CHECK(std::abs(wr.r_omega(q)) < 1e-14);
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
                CHECK(std::abs(wr.stress.at(m, n)(q)) < 1e-14);
                CHECK(std::abs(wr.einstein_minus_stress.at(m, n)(q)) < 1e-12);
            }
    }

    SUBCASE("Kasner reduction solves the system: r_gamma = 0, Ein = T") {
        const double p1 = 2.0 / 3, p2 = 2.0 / 3, p3 = -1.0 / 3;
        KKData kk = kasner_kk(p1, p2, p3);
        MatrixField g = kk.conformal_metric();
        WaveMapResiduals wr =
            wavemap_residuals(g, kk.chart3, kk.gamma, ScalarField::constant(0.0));
        for (Point q : {p3_(1.0, 0.1, -0.3), p3_(2.2, -0.5, 0.9)}) {
            CHECK(std::abs(wr.r_gamma(q)) < 1e-6);
            CHECK(std::abs(wr.r_omega(q)) < 1e-12);
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n)
                    CHECK(std::abs(wr.einstein_minus_stress.at(m, n)(q)) < 1e-5);
        }
    }

    SUBCASE("omega = c t on Minkowski3 is detected as a non-solution") {
        const double cc = 0.9;
        WaveMapResiduals wr =
            wavemap_residuals(flat3(c), c, ScalarField::constant(0.0),
                              ScalarField::constant(cc) * ScalarField::coord(0));
        Point q = p3_(1.5, 0.0, 0.0);
        CHECK(std::abs(wr.r_omega(q)) < 1e-12);
        // g^{tt} = -1 with signature (-++): r_gamma = -c^2/2
        CHECK(wr.r_gamma(q) == doctest::Approx(-0.5 * cc * cc).epsilon(1e-12));
    }
}

TEST_CASE("polarized data: F-paths fold to structural zeros") {
    KKData kk = kasner_kk(2.0 / 3, 2.0 / 3, -1.0 / 3);
    CHECK(kk.polarized);
    FormField F = kk.faraday();
    for (int r = 0; r < F.indices().size(); ++r) CHECK(F.comp(r).is_zero());
    // twist one-form is exactly the zero field, not merely numerically small
    TwistData tw = twist_potential(kk, p3_(1.0, 0.0, 0.0));
    for (int r = 0; r < 3; ++r) CHECK(tw.G.comp(r).is_zero());
}
