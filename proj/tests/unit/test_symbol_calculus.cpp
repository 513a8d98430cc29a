#include <catch2/catch_amalgamated.hpp>

#include <diracsym/diracsym.hpp>

using namespace dsym;
using Catch::Approx;

namespace {

MatrixSymbol scalar_symbol(std::function<cplx(const Vec3&, const Vec3&)> f, double ord = 0.0) {
    return {[f](double, const Vec3& x, const Vec3& xi) { return scalar<4>(f(x, xi)); }, ord, 0.0};
}

}  // namespace

TEST_CASE("poisson bracket of the canonical pair") {
    const auto a = scalar_symbol([](const Vec3&, const Vec3& xi) { return xi[0]; });
    const auto b = scalar_symbol([](const Vec3& x, const Vec3&) { return x[0]; });
    CHECK(max_abs(poisson_bracket(a, b, 1, 0.0, {0.3, 0.1, 0.0}, {1.2, 0.0, 0.5}) - C4::identity()) < 1e-9);
}

TEST_CASE("poisson bracket vanishes for xi-only symbols") {
    const auto a = scalar_symbol([](const Vec3&, const Vec3& xi) { return jbr(xi); });
    const auto b = scalar_symbol([](const Vec3&, const Vec3& xi) { return xi[1] * xi[2]; });
    CHECK(max_abs(poisson_bracket(a, b, 1, 0.0, {1.0, 2.0, 3.0}, {0.4, -0.2, 0.9})) < 1e-12);
}

TEST_CASE("poisson bracket against analytic derivative") {
    const auto a = scalar_symbol([](const Vec3&, const Vec3& xi) { return jbr(xi); });
    const auto b = scalar_symbol([](const Vec3& x, const Vec3&) { return norm2(x); });
    const C4 r = poisson_bracket(a, b, 1, 0.0, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    CHECK(max_abs(r - std::sqrt(2.0) * C4::identity()) <= 1e-6);
}

TEST_CASE("leibniz product of derivative and position") {
    const Vec3 x{0.7, 0.0, 0.0}, xi{-1.3, 0.0, 0.0};
    const auto a = scalar_symbol([](const Vec3&, const Vec3& k) { return k[0]; });
    const auto b = scalar_symbol([](const Vec3& y, const Vec3&) { return y[0]; });
    const C4 r = leibniz_product(a, b, 1, 0.0, x, xi);
    CHECK(max_abs(r - (x[0] * xi[0] - I_unit) * C4::identity()) < 1e-8);

    const auto a2 = scalar_symbol([](const Vec3&, const Vec3& k) { return k[0] * k[0]; });
    const auto b2 = scalar_symbol([](const Vec3& y, const Vec3&) { return y[0] * y[0]; });
    const cplx want = x[0] * x[0] * xi[0] * xi[0] - 4.0 * I_unit * x[0] * xi[0] - 2.0;
    CHECK(max_abs(leibniz_product(a2, b2, 2, 0.0, x, xi) - want * C4::identity()) < 1e-5);
}

TEST_CASE("leibniz product at N = 0 is the pointwise product") {
    CounterRng rng(21, 0);
    C4 A, B;
    for (auto& v : A.a) v = {rng.normal(), rng.normal()};
    for (auto& v : B.a) v = {rng.normal(), rng.normal()};
    const MatrixSymbol a{[A](double, const Vec3& x, const Vec3&) { return (1.0 + x[1]) * A; }, 0.0, 0.0};
    const MatrixSymbol b{[B](double, const Vec3&, const Vec3& xi) { return xi[2] * B; }, 0.0, 0.0};
    const Vec3 x{0.1, 0.2, 0.3}, xi{1.0, 2.0, 3.0};
    CHECK(max_abs(leibniz_product(a, b, 0, 0.0, x, xi) - a(0.0, x, xi) * b(0.0, x, xi)) < 1e-14);
}

TEST_CASE("leibniz adjoint examples") {
    const Vec3 x{0.4, -1.0, 0.2}, xi{2.5, 0.1, 0.0};
    const auto a = scalar_symbol([](const Vec3&, const Vec3& k) { return k[0]; });
    CHECK(max_abs(leibniz_adjoint(a, 3, 0.0, x, xi) - xi[0] * C4::identity()) < 1e-9);
    const auto b = scalar_symbol([](const Vec3& y, const Vec3& k) { return y[0] * k[0]; });
    CHECK(max_abs(leibniz_adjoint(b, 1, 0.0, x, xi) - (x[0] * xi[0] - I_unit) * C4::identity()) < 1e-8);
    const auto c = scalar_symbol([](const Vec3& y, const Vec3&) { return I_unit * std::sin(y[0]); });
    CHECK(max_abs(leibniz_adjoint(c, 2, 0.0, x, xi) + I_unit * std::sin(x[0]) * C4::identity()) < 1e-8);
}

TEST_CASE("order probes recover growth rates") {
    std::vector<double> radii;
    for (int k = 0; k <= 8; ++k) radii.push_back(10.0 * std::pow(10.0, 0.25 * k));
    const auto s = scalar_symbol([](const Vec3&, const Vec3& k) { return jbr(k); }, 1.0);
    CHECK(order_probe(s, {0, 0, 0}, {0, 0, 0}, radii).xi.slope == Approx(1.0).margin(0.05));
    CHECK(order_probe(s, {0, 0, 0}, {1, 0, 0}, radii).xi.slope == Approx(0.0).margin(0.05));
    const auto w = scalar_symbol([](const Vec3&, const Vec3& k) { return 1.0 / (1.0 + norm2(k)); }, -2.0);
    CHECK(order_probe(w, {0, 0, 0}, {0, 0, 0}, radii).xi.slope == Approx(-2.0).margin(0.05));
}

TEST_CASE("loglog fit of an exact power law") {
    const std::vector<double> r{1, 2, 4, 8, 16};
    std::vector<double> y;
    for (double v : r) y.push_back(3.0 * std::pow(v, -1.5));
    const auto f = loglog_fit(r, y);
    CHECK(f.slope == Approx(-1.5).epsilon(1e-12));
    CHECK(f.rms < 1e-12);
}

TEST_CASE("commutator equation") {
    const PotentialModel m = ZeroField{};
    const Vec3 x{}, xi{0.3, -1.1, 0.8};
    CHECK(max_abs(solve_commutator(m, 0.0, x, xi, C4{})) == 0.0);

    CounterRng rng(22, 0);
    C4 W;
    for (auto& v : W.a) v = {rng.normal(), rng.normal()};
    const auto& s = standard_set();
    const C4 pp = projection_p(s, +1, m, 0.0, x, xi), pm = projection_p(s, -1, m, 0.0, x, xi);
    const C4 Z = pp * W * pm + pm * W * pp;
    const C4 z = solve_commutator(m, 0.0, x, xi, Z);
    const C4 h = symbol_h(s, m, 0.0, x, xi);
    CHECK(max_abs(comm(h, z) - Z) <= 1e-11);

    CHECK_THROWS_AS(solve_commutator(m, 0.0, x, xi, pp * W * pp), SolvabilityViolation);
}
