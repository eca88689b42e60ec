#include "cartan/fixtures.hpp"

#include <cmath>
#include <random>

#include "cartan/expr.hpp"

namespace cartan {

namespace {

const double kPi = 3.14159265358979323846;

Chart chart4_cartesian(double half_width) {
    return Chart({"t", "x1", "x2", "x3"}, {-1, 1, 1, 1},
                 {Interval{-half_width, half_width}, Interval{-half_width, half_width},
                  Interval{-half_width, half_width}, Interval{-half_width, half_width}});
}

CoFrame diagonal_coframe(const Chart& chart, std::vector<ScalarField> diag) {
    const int d = chart.dim();
    std::vector<ScalarField> e(static_cast<size_t>(d * d),
                               ScalarField::constant(0.0));
    for (int a = 0; a < d; ++a)
        e[static_cast<size_t>(a * d + a)] = diag[static_cast<size_t>(a)];
    return CoFrame(chart, std::move(e));
}

MatrixField diagonal_metric(const Chart& chart, std::vector<ScalarField> diag) {
    const int d = chart.dim();
    std::vector<ScalarField> g(static_cast<size_t>(d * d),
                               ScalarField::constant(0.0));
    for (int a = 0; a < d; ++a) {
        const double s = chart.signature()[static_cast<size_t>(a)];
        g[static_cast<size_t>(a * d + a)] =
            ScalarField::constant(s) * diag[static_cast<size_t>(a)] *
            diag[static_cast<size_t>(a)];
    }
    return MatrixField(d, std::move(g));
}

}  // namespace

Fixture minkowski4() {
    Fixture f;
    f.name = "minkowski4";
    f.chart = chart4_cartesian(10.0);
    std::vector<ScalarField> ones(4, ScalarField::constant(1.0));
    f.coframe = diagonal_coframe(f.chart, ones);
    f.metric = diagonal_metric(f.chart, ones);
    f.vacuum = true;
    f.samples = {make_point({0.3, -0.2, 0.5, 1.0}), make_point({1.0, 0.0, 0.0, 0.0}),
                 make_point({-0.7, 2.0, -1.0, 0.4})};
    return f;
}

Fixture kasner(double p1, double p2, double p3) {
    Fixture f;
    f.name = "kasner";
    f.chart = Chart({"t", "x1", "x2", "x3"}, {-1, 1, 1, 1},
                    {Interval{0.05, 40.0}, Interval{-10, 10}, Interval{-10, 10},
                     Interval{-10, 10}});
    ScalarField t = ScalarField::coord(0);
    std::vector<ScalarField> diag{ScalarField::constant(1.0), pow(t, p1),
                                  pow(t, p2), pow(t, p3)};
    f.coframe = diagonal_coframe(f.chart, diag);
    f.metric = diagonal_metric(f.chart, diag);
    const double c1 = p1 + p2 + p3, c2 = p1 * p1 + p2 * p2 + p3 * p3;
    f.vacuum = std::abs(c1 - 1.0) < 1e-12 && std::abs(c2 - 1.0) < 1e-12;
    f.samples = {make_point({1.0, 0.1, -0.2, 0.3}), make_point({2.0, 0.0, 0.0, 0.0}),
                 make_point({1.5, 1.0, 2.0, -1.0}), make_point({4.0, -0.3, 0.2, 0.1})};
    return f;
}

Fixture schwarzschild(double m) {
    if (!(m > 0)) throw Error("schwarzschild: mass must be positive");
    Fixture f;
    f.name = "schwarzschild";
    f.chart = Chart({"t", "r", "theta", "phi"}, {-1, 1, 1, 1},
                    {Interval{-10, 10}, Interval{2.3 * m, 20.0 * m},
                     Interval{0.3, kPi - 0.3}, Interval{-kPi, kPi}});
    ScalarField r = ScalarField::coord(1);
    ScalarField th = ScalarField::coord(2);
    ScalarField fpot = ScalarField::constant(1.0) -
                       ScalarField::constant(2.0 * m) / r;
    std::vector<ScalarField> diag{sqrt(fpot), ScalarField::constant(1.0) / sqrt(fpot),
                                  r, r * sin(th)};
    f.coframe = diagonal_coframe(f.chart, diag);
    f.metric = diagonal_metric(f.chart, diag);
    f.vacuum = true;
    f.samples = {make_point({0.0, 4.0 * m, kPi / 2, 0.3}),
                 make_point({1.0, 3.0 * m, 1.0, -0.5}),
                 make_point({-0.5, 6.0 * m, 2.0, 1.2}),
                 make_point({0.2, 10.0 * m, kPi / 2, 2.0})};
    return f;
}

Fixture equivariant(const std::string& omega_expr, const std::string& gamma_expr) {
    Fixture f;
    f.name = "equivariant";
    f.chart = Chart({"t", "r", "theta"}, {-1, 1, 1},
                    {Interval{-5, 5}, Interval{0.4, 8.0}, Interval{-kPi, kPi}});
    ScalarField Om = parse_expression(omega_expr, f.chart);
    ScalarField ga = parse_expression(gamma_expr, f.chart);
    ScalarField r = ScalarField::coord(1);
    std::vector<ScalarField> diag{exp(Om), exp(ga), r};
    f.coframe = diagonal_coframe(f.chart, diag);
    f.metric = diagonal_metric(f.chart, diag);
    f.vacuum = false;  // generic Omega, gamma
    f.samples = {make_point({0.5, 1.0, 0.3}), make_point({1.0, 2.0, -1.0}),
                 make_point({-0.4, 3.0, 2.0})};
    return f;
}

Fixture sphere2(double a) {
    if (!(a > 0)) throw Error("sphere2: radius must be positive");
    Fixture f;
    f.name = "sphere2";
    f.chart = Chart({"theta", "phi"}, {1, 1},
                    {Interval{0.3, kPi - 0.3}, Interval{-kPi, kPi}});
    ScalarField th = ScalarField::coord(0);
    std::vector<ScalarField> diag{ScalarField::constant(a),
                                  ScalarField::constant(a) * sin(th)};
    f.coframe = diagonal_coframe(f.chart, diag);
    f.metric = diagonal_metric(f.chart, diag);
    f.vacuum = false;
    f.samples = {make_point({1.0, 0.5}), make_point({kPi / 2, -2.0}),
                 make_point({2.0, 1.5})};
    return f;
}

Fixture conformally_flat(double eps) {
    Fixture f;
    f.name = "conformally_flat";
    f.chart = chart4_cartesian(2.0);
    ScalarField t = ScalarField::coord(0);
    ScalarField a = ScalarField::constant(1.0) + ScalarField::constant(eps) * t * t;
    std::vector<ScalarField> diag{a, a, a, a};
    f.coframe = diagonal_coframe(f.chart, diag);
    f.metric = diagonal_metric(f.chart, diag);
    f.vacuum = false;
    f.samples = {make_point({0.4, 0.1, -0.3, 0.2}), make_point({0.8, 0.5, 0.2, -0.6})};
    return f;
}

namespace {

/// Smooth random scalar: sum of a few products of sin/cos in each coordinate
/// with integer frequencies <= 2. Bounded by ~1 in C^0 and mildly in C^k.
ScalarField random_trig(std::mt19937& rng, const Chart& chart) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 2);
    std::uniform_int_distribution<int> kind(0, 1);
    ScalarField acc = ScalarField::constant(0.0);
    const int terms = 3;
    for (int t = 0; t < terms; ++t) {
        ScalarField prod = ScalarField::constant(amp(rng) / terms);
        for (int i = 0; i < chart.dim(); ++i) {
            ScalarField arg =
                ScalarField::constant(static_cast<double>(freq(rng))) *
                ScalarField::coord(i);
            prod = prod * (kind(rng) ? sin(arg) : cos(arg));
        }
        acc = acc + prod;
    }
    return acc;
}

}  // namespace

Fixture perturbed_flat(unsigned seed, double amplitude) {
    Fixture f;
    f.name = "perturbed_flat";
    f.chart = chart4_cartesian(1.5);
    std::mt19937 rng(seed);
    const int d = 4;
    std::vector<ScalarField> g(16, ScalarField::constant(0.0));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            ScalarField h = ScalarField::constant(amplitude) * random_trig(rng, f.chart);
            ScalarField base = ScalarField::constant(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0);
            g[static_cast<size_t>(i * d + j)] = base + h;
            if (i != j) g[static_cast<size_t>(j * d + i)] = g[static_cast<size_t>(i * d + j)];
        }
    f.metric = MatrixField(d, g);
    f.coframe = coframe_from_metric(f.chart, f.metric);
    f.vacuum = false;
    f.samples = {make_point({0.1, -0.2, 0.3, 0.15}), make_point({-0.3, 0.4, 0.1, -0.2}),
                 make_point({0.25, 0.05, -0.35, 0.3})};
    return f;
}

Fixture quadratic_bump(unsigned seed, double amplitude) {
    Fixture f;
    f.name = "quadratic_bump";
    f.chart = chart4_cartesian(1.5);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const int d = 4;
    std::vector<ScalarField> g(16, ScalarField::constant(0.0));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            // quadratic form c_{kl} x^k x^l per metric component
            ScalarField q = ScalarField::constant(0.0);
            for (int k = 0; k < d; ++k)
                for (int l = k; l < d; ++l)
                    q = q + ScalarField::constant(amp(rng)) * ScalarField::coord(k) *
                                ScalarField::coord(l);
            ScalarField base = ScalarField::constant(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0);
            g[static_cast<size_t>(i * d + j)] = base + ScalarField::constant(amplitude) * q;
            if (i != j) g[static_cast<size_t>(j * d + i)] = g[static_cast<size_t>(i * d + j)];
        }
    f.metric = MatrixField(d, g);
    f.coframe = coframe_from_metric(f.chart, f.metric);
    f.vacuum = false;
    f.samples = {make_point({0.0, 0.0, 0.0, 0.0}), make_point({0.2, 0.1, -0.1, 0.05})};
    return f;
}

// ---------------------------------------------------------------------------
// Fixture spec parsing
// ---------------------------------------------------------------------------

namespace {

double parse_number_or_fraction(const std::string& s, const std::string& field) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return std::stod(s);
        const double num = std::stod(s.substr(0, slash));
        const double den = std::stod(s.substr(slash + 1));
        if (den == 0.0) throw Error("zero denominator");
        return num / den;
    } catch (const std::exception&) {
        throw Error("fixture argument '" + field + "': cannot parse number '" + s + "'");
    }
}

/// Split on top-level separators (comma or semicolon), ignoring those inside
/// parentheses.
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == ',' || c == ';') && depth == 0) {
            out.push_back(cur);
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

Fixture fixture_from_spec(const std::string& spec) {
    std::string name, args;
    const auto paren = spec.find('(');
    const auto colon = spec.find(':');
    if (paren != std::string::npos) {
        if (spec.back() != ')') throw Error("fixture spec '" + spec + "': missing ')'");
        name = trim(spec.substr(0, paren));
        args = spec.substr(paren + 1, spec.size() - paren - 2);
    } else if (colon != std::string::npos) {
        name = trim(spec.substr(0, colon));
        args = spec.substr(colon + 1);
    } else {
        name = trim(spec);
    }
    auto arg_list = split_args(args);

    if (name == "minkowski4") return minkowski4();
    if (name == "kasner") {
        if (arg_list.size() != 3)
            throw Error("fixture 'kasner' expects 3 exponents p1,p2,p3");
        return kasner(parse_number_or_fraction(trim(arg_list[0]), "p1"),
                      parse_number_or_fraction(trim(arg_list[1]), "p2"),
                      parse_number_or_fraction(trim(arg_list[2]), "p3"));
    }
    if (name == "schwarzschild") {
        if (arg_list.size() != 1)
            throw Error("fixture 'schwarzschild' expects 1 argument m");
        return schwarzschild(parse_number_or_fraction(trim(arg_list[0]), "m"));
    }
    if (name == "equivariant") {
        if (arg_list.size() != 2)
            throw Error("fixture 'equivariant' expects Omega and gamma expressions");
        return equivariant(trim(arg_list[0]), trim(arg_list[1]));
    }
    if (name == "sphere2") {
        if (arg_list.size() != 1) throw Error("fixture 'sphere2' expects radius a");
        return sphere2(parse_number_or_fraction(trim(arg_list[0]), "a"));
    }
    throw Error("unknown fixture '" + name + "'");
}

}  // namespace cartan
