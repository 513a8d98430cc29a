#include <catch2/catch_amalgamated.hpp>

#include <diracsym/diracsym.hpp>

using namespace dsym;
using Catch::Approx;

namespace {

const PlaneWaveConfig cfg{0.3, 1.0};

XiSymbol scalar_q(int j) {
    return [j](const Vec3& xi) { return xi[static_cast<std::size_t>(j - 1)] * C4::identity(); };
}

}  // namespace

TEST_CASE("sinc series and closed form join smoothly") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(0.99e-4) == Approx(std::sin(0.99e-4) / 0.99e-4).epsilon(1e-15));
    CHECK(sinc(1.01e-4) == Approx(1.0 - 1.01e-4 * 1.01e-4 / 6.0).epsilon(1e-15));
    CHECK(sinc(std::numbers::pi) == Approx(0.0).margin(1e-16));
}

TEST_CASE("K symbol") {
    CHECK(max_abs(k_symbol({0.0, 1.0}, 0.7, {}) - radiation_set().beta) == 0.0);
    const Vec3 xi{0.4, -1.0, 2.0};
    const C4 k = k_symbol(cfg, 0.0, xi);
    CHECK(max_abs(k - (h0(xi) - xi[0] * C4::identity())) < 1e-15);
    CHECK(max_abs(k_symbol(cfg, 1.3, xi) - adjoint(k_symbol(cfg, 1.3, xi))) == 0.0);
}

TEST_CASE("translation conjugation on the spectral grid") {
    CHECK(translation_conjugation_residual({0.0, 1.0}, 0.9, 256) <= 1e-12);
    CHECK(translation_conjugation_residual({0.3, 1.0}, 0.7, 256) <= 1e-10);
    CHECK(translation_conjugation_residual({0.3, 1.0}, 2.0 * std::numbers::pi, 256) <= 1e-12);
    CHECK_THROWS_AS(translation_conjugation_residual(cfg, 0.7, 100), GridError);
}

TEST_CASE("X and Z operations") {
    const Vec3 xi{0.3, 1.2, -0.5};
    const auto cfree = [](double, const Vec3&) { return 2.0 * C4::identity(); };
    CHECK(max_abs(x_op(cfree, cfg, 0.4, xi)) == 0.0);
    const PlaneWaveConfig c2{0.3, 1.7};
    const auto c1 = [](double, const Vec3& k) { return k[0] * C4::identity(); };
    const double x1 = 0.4;
    CHECK(max_abs(x_op(c1, c2, x1, xi) - 2.0 * c2.omega * std::cos(c2.omega * x1) * C4::identity()) < 1e-14);
    CHECK(max_abs(z_op([](double, const Vec3&) { return C4::identity(); }, cfg, x1, xi)) == 0.0);
    CHECK(max_abs(z_op(c1, {0.0, 1.0}, x1, xi)) == 0.0);
    const C4 want = (0.5 * cfg.epsilon0) * (alpha_rad(2) * x_op(c1, cfg, x1, xi));
    CHECK(max_abs(z_op(c1, cfg, x1, xi) - want) < 1e-15);
}

TEST_CASE("plus-minus splitting") {
    CounterRng rng(51, 0);
    const Vec3 xi = rng.normal3(2.0);
    C4 a;
    for (auto& v : a.a) v = {rng.normal(), rng.normal()};
    const auto s = split_pm(a, xi);
    CHECK(max_abs(s.plus + s.minus + s.pm + s.mp - a) <= 1e-13);
    const auto c = split_pm(comm(h0(xi), a), xi);
    CHECK(max_abs(c.pm - 2.0 * jbr(xi) * s.pm) <= 1e-11);
    CHECK(max_abs(c.mp + 2.0 * jbr(xi) * s.mp) <= 1e-11);
    const auto h = split_pm(h0(xi), xi);
    CHECK(max_abs(h.pm) < 1e-15);
    CHECK(max_abs(h.mp) < 1e-15);
    CHECK(max_abs(split_pm(alpha_rad(2), {1.0, 0.0, 0.0}).plus) < 1e-15);
}

TEST_CASE("first correction") {
    const Vec3 xi{0.6, -0.4, 1.3};
    const auto z = first_correction_z([](const Vec3&) { return 3.0 * C4::identity(); }, cfg, 0.8, xi);
    CHECK(max_abs(z.pm) == 0.0);
    CHECK(max_abs(z.mp) == 0.0);
    const auto w = first_correction_z([](const Vec3& k) { return p_free(+1, k); }, cfg, 0.8, xi);
    CHECK(max_abs(w.pm) > 1e-3);
    CHECK(max_abs(anticomm(h0(xi), w.pm)) <= 1e-11);
    CHECK(max_abs(anticomm(h0(xi), w.mp)) <= 1e-11);
    const auto e = first_correction_z([](const Vec3& k) { return p_free(+1, k); }, {0.0, 1.0}, 0.8, xi);
    CHECK(max_abs(e.pm) == 0.0);
    CHECK_THROWS_AS(first_correction_z([](const Vec3&) { return alpha_rad(2); }, cfg, 0.8, xi), CommutationViolation);
}

TEST_CASE("gamma closed form") {
    CHECK(gamma_t({1, 2, 3}, 0.0, 1.0) == cplx{});
    CHECK(std::abs(gamma_t({0.0, 1.0, 0.0}, 2.0 * std::numbers::pi, 1.0)) <= 1e-12);
    CHECK(std::abs(gamma_t({1e8, 0.0, 0.0}, 3.0, 1.0) - 3.0) <= 1e-8);
    const Vec3 xi{-0.7, 0.4, 1.0};
    const double t = 4.3, w = 1.3;
    const cplx q = quad::complex_gk([&](double tau) { return std::exp(I_unit * (w * tau * (s_comp(1, xi) - 1.0))); }, 0.0, t);
    CHECK(std::abs(q - gamma_t(xi, t, w)) <= 1e-10);
}

TEST_CASE("second correction for momentum components") {
    const Vec3 xi{0.8, -0.6, 0.3};
    for (int j : {2, 3})
        for (double t : {0.5, 3.0}) {
            const auto z = second_correction_z_plusminus(scalar_q(j), cfg, t, 0.4, xi);
            CHECK(max_abs(z.plus) <= 1e-10);
            CHECK(max_abs(z.minus) <= 1e-10);
        }
    const auto z0 = second_correction_z_plusminus(scalar_q(1), cfg, 0.0, 0.4, xi);
    CHECK(max_abs(z0.plus) == 0.0);

    const double t = 2.2, x1 = 0.4;
    const cplx g = gamma_t(xi, t, cfg.omega);
    const cplx e = std::exp(I_unit * (cfg.omega * x1));
    const C4 want =
        (0.5 * cfg.epsilon0 * cfg.omega * s_comp(2, xi)) * ((g * e + std::conj(g) * std::conj(e)) * p_free(+1, xi));
    const auto z = second_correction_z_plusminus(scalar_q(1), cfg, t, x1, xi);
    CHECK(max_abs(z.plus - want) <= 1e-10);
}

TEST_CASE("D1 Heisenberg symbol") {
    const Vec3 xi{0.5, 1.5, -0.2};
    CHECK(max_abs(d1_heisenberg_symbol(cfg, 0.0, 0.7, xi) - xi[0] * C4::identity()) == 0.0);
    CHECK(max_abs(d1_heisenberg_symbol({0.0, 1.0}, 3.0, 0.7, xi) - xi[0] * C4::identity()) == 0.0);
    const C4 a = d1_heisenberg_symbol(cfg, 2.5, 0.7, xi);
    CHECK(max_abs(a - adjoint(a)) <= 1e-12);
}

TEST_CASE("shift symbol") {
    const Vec3 xi{0.5, 1.5, -0.2};
    CHECK(max_abs(shift_symbol(cfg, 0.0, 0.3, xi)) == 0.0);
    CHECK(max_abs(shift_symbol(cfg, 1.7, 0.3, xi) - (d1_heisenberg_symbol(cfg, 1.7, 0.3, xi) - xi[0] * C4::identity())) <=
          1e-10);
    // s1 = 0: theta = 1/2, wt = 2 pi kills the electron part
    const Vec3 perp{0.0, 1.5, -0.2};
    const C4 s = shift_symbol(cfg, 2.0 * std::numbers::pi, 0.3, perp);
    CHECK(max_abs(p_free(+1, perp) * s * p_free(+1, perp)) <= 1e-14);
}

TEST_CASE("collision identity and its flipped sign") {
    const Vec3 xi{-0.4, 1.1, 0.2};
    const double t = 0.8, x1 = 0.3;
    const double lhs = collision_lhs(cfg, t, x1, xi);
    CHECK(std::abs(lhs - collision_rhs(cfg, t, x1, xi)) <= 1e-10);
    const double th = theta_of(xi);
    const double flipped = cfg.epsilon0 / (2.0 * th) * s_comp(2, xi) *
                           (std::sin(cfg.omega * (x1 - 2.0 * th * t)) - std::sin(cfg.omega * x1));
    CHECK(std::abs(lhs - flipped) > 0.1 * std::abs(lhs));
}

TEST_CASE("compton direction dependence") {
    const auto f = compton_speed({100.0, 0.0, 0.0});
    CHECK(f.two_theta == Approx(1.0 - 100.0 / std::sqrt(1.0 + 1e4)).epsilon(1e-12));
    CHECK(f.one_minus_cos == 0.0);
    const auto p = compton_speed({0.0, 100.0, 0.0});
    CHECK(p.two_theta == 1.0);
    CHECK(p.one_minus_cos == 1.0);
    const auto b = compton_speed({-1e8, 0.0, 0.0});
    CHECK(b.two_theta == Approx(2.0).epsilon(1e-12));
    CHECK(b.one_minus_cos == 2.0);
    CHECK_THROWS_AS(compton_speed({}), ZeroMomentum);
}

TEST_CASE("fourier adjoint and symmetrize") {
    FourierSymbol single{1.0, {{0, [](const Vec3& xi) { return h0(xi); }}}};
    const Vec3 xi{0.3, -0.8, 1.1};
    CHECK(max_abs(symmetrize(single).eval(0.4, xi) - h0(xi)) < 1e-15);

    CounterRng rng(52, 0);
    C4 A;
    for (auto& v : A.a) v = {rng.normal(), rng.normal()};
    FourierSymbol fs{1.3, {{-1, [A](const Vec3& k) { return k[0] * A; }}, {2, [A](const Vec3& k) { return k[1] * adjoint(A); }}}};
    const auto twice = fourier_adjoint(fourier_adjoint(fs));
    CHECK(max_abs(twice.eval(0.7, xi) - fs.eval(0.7, xi)) <= 1e-13);
    const auto sym = symmetrize(fs);
    const auto sa = fourier_adjoint(sym);
    for (double x1 : {0.0, 0.9, 2.3}) CHECK(max_abs(sa.eval(x1, xi) - sym.eval(x1, xi)) <= 1e-12);
}

TEST_CASE("symmetrize changes the D1 symbol only at lower order") {
    const auto fs = fourier_from_trig([](double x1, const Vec3& k) { return d1_heisenberg_symbol(cfg, 1.5, x1, k); },
                                      cfg.omega);
    const auto sym = symmetrize(fs);
    const Vec3 dir = Vec3{0.6, 0.7, -0.3} / norm(Vec3{0.6, 0.7, -0.3});
    std::vector<double> r, y;
    for (double R : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
        const Vec3 xi = R * dir;
        double m = 0.0;
        for (double x1 : {0.2, 1.1, 2.9}) m = std::max(m, max_abs(sym.eval(x1, xi) - fs.eval(x1, xi)));
        r.push_back(R);
        y.push_back(jbr(xi) * m);
    }
    CHECK(y.front() > 1e-6);
    CHECK(loglog_fit(r, y).slope <= 0.05);
}

TEST_CASE("momentum ladder") {
    std::vector<Vec3> probes{{0.5, 1.0, -0.2}, {-1.3, 0.4, 0.9}, {2.0, -0.7, 0.1}};
    auto shifts = [&](const PlaneWaveConfig& c, double t) {
        std::vector<int> n;
        const auto fs = fourier_from_trig([c, t](double x1, const Vec3& k) { return d1_heisenberg_symbol(c, t, x1, k); },
                                          c.omega);
        for (const auto& m : momentum_representation(fs, probes)) n.push_back(m.n);
        return n;
    };
    CHECK(shifts(cfg, 1.5) == std::vector<int>{-1, 0, 1});
    CHECK(shifts({0.0, 1.0}, 1.5) == std::vector<int>{0});
    const PlaneWaveConfig c2{0.3, 2.0};
    const auto fs = fourier_from_trig([c2](double x1, const Vec3& k) { return d1_heisenberg_symbol(c2, 1.5, x1, k); }, 2.0);
    for (const auto& m : momentum_representation(fs, probes)) CHECK(m.shift == 2.0 * m.n);
}
