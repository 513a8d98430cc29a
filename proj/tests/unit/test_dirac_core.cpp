#include <catch2/catch_amalgamated.hpp>

#include <diracsym/diracsym.hpp>

using namespace dsym;
using Catch::Approx;

TEST_CASE("standard set beta is diag(1,1,-1,-1)") {
    const auto& s = standard_set();
    C4 b;
    b(0, 0) = b(1, 1) = 1.0;
    b(2, 2) = b(3, 3) = -1.0;
    CHECK(s.beta == b);
}

TEST_CASE("radiation set alpha1 and beta layout") {
    const auto& s = radiation_set();
    C4 a1;
    a1(0, 0) = a1(1, 1) = -1.0;
    a1(2, 2) = a1(3, 3) = 1.0;
    CHECK(s.alpha[0] == a1);
    CHECK(block(s.beta, 0, 1) == C2::identity());
    CHECK(block(s.beta, 1, 0) == C2::identity());
    CHECK(block(s.beta, 0, 0) == C2{});
}

TEST_CASE("clifford residual is exactly zero for both variants") {
    CHECK(clifford_residual(standard_set()) == 0.0);
    CHECK(clifford_residual(radiation_set()) == 0.0);
}

TEST_CASE("pauli convention s1 s2 = i s3 cyclic") {
    CHECK(max_abs(pauli(1) * pauli(2) - I_unit * pauli(3)) == 0.0);
    CHECK(max_abs(pauli(2) * pauli(3) - I_unit * pauli(1)) == 0.0);
    CHECK(max_abs(pauli(3) * pauli(1) - I_unit * pauli(2)) == 0.0);
}

TEST_CASE("free symbol at rest and unit momentum") {
    const PotentialModel z = ZeroField{};
    CHECK(symbol_h(standard_set(), z, 0.0, {}, {}) == standard_set().beta);
    const C4 h = symbol_h(standard_set(), z, 0.0, {}, {1.0, 0.0, 0.0});
    CHECK(max_abs(h * h - 2.0 * C4::identity()) < 1e-15);
}

TEST_CASE("eigenvalues shift with V") {
    const auto l = eigen_lambda(ZeroField{}, 0.0, {}, {});
    CHECK(l.plus == 1.0);
    CHECK(l.minus == -1.0);
    // coulomb with V(0) = -cf / r0 = -0.5
    const PotentialModel c = SmoothedCoulomb{0.05, 0.1};
    const auto m = eigen_lambda(c, 0.0, {}, {});
    CHECK(m.plus == Approx(0.5).epsilon(1e-14));
    CHECK(m.minus == Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("projections at rest are (1 +- beta)/2") {
    const auto& s = standard_set();
    for (int sg : {+1, -1})
        CHECK(max_abs(projection_p(s, sg, ZeroField{}, 0.0, {}, {}) - 0.5 * (C4::identity() + double(sg) * s.beta)) <
              1e-15);
}

TEST_CASE("diagonalizer is identity at zero kinetic momentum") {
    CHECK(max_abs(diagonalizer_upsilon(ZeroField{}, 0.0, {}, {}) - C4::identity()) < 1e-15);
}

TEST_CASE("diagonalizer conjugates h to V + <zeta> beta at random points") {
    CounterRng rng(11, 0);
    const PotentialModel m = UniformB{{0.2, 0.4, -0.1}};
    for (int n = 0; n < 20; ++n) {
        const Vec3 x = rng.normal3(), xi = rng.normal3(3.0);
        const C4 U = diagonalizer_upsilon(m, 0.0, x, xi);
        const C4 h = symbol_h(standard_set(), m, 0.0, x, xi);
        CHECK(max_abs(adjoint(U) * U - C4::identity()) < 1e-13);
        CHECK(max_abs(adjoint(U) * h * U - jbr(zeta_at(m, 0.0, x, xi)) * standard_set().beta) < 1e-12);
    }
}

TEST_CASE("eigencolumns span the eigenspaces") {
    CounterRng rng(12, 0);
    const PotentialModel m = SmoothedCoulomb{0.3, 0.5};
    for (int n = 0; n < 10; ++n) {
        const Vec3 x = rng.normal3(), xi = rng.normal3(2.0);
        for (int sg : {+1, -1}) {
            const C42 u = eigencolumns(sg, m, 0.0, x, xi);
            const C4 h = symbol_h(standard_set(), m, 0.0, x, xi);
            CHECK(max_abs(h * u - lambda_sign(sg, m, 0.0, x, xi) * u) < 1e-12);
        }
    }
}

TEST_CASE("restriction of identity, h and rest-frame spin") {
    CounterRng rng(13, 0);
    const PotentialModel m = SmoothedCoulomb{0.3, 0.5};
    const Vec3 x = rng.normal3(), xi = rng.normal3();
    for (int sg : {+1, -1}) {
        CHECK(max_abs(restrict_to_eigenspace(C4::identity(), sg, m, 0.0, x, xi) - C2::identity()) < 1e-14);
        const C4 h = symbol_h(standard_set(), m, 0.0, x, xi);
        CHECK(max_abs(restrict_to_eigenspace(h, sg, m, 0.0, x, xi) -
                      lambda_sign(sg, m, 0.0, x, xi) * C2::identity()) < 1e-13);
    }
    const C4 S3 = blocks(0.5 * pauli(3), C2{}, C2{}, 0.5 * pauli(3));
    CHECK(max_abs(restrict_to_eigenspace(S3, +1, ZeroField{}, 0.0, {}, {}) - 0.5 * pauli(3)) < 1e-15);
}

TEST_CASE("garding-wightman decomposition") {
    const auto d = gw_decompose(pauli(3));
    CHECK(std::abs(d.kappa0) == 0.0);
    CHECK(gw_real_vector(d) == Vec3{0.0, 0.0, 1.0});
    const auto e = gw_decompose(C2::identity());
    CHECK(e.kappa0 == cplx(1.0));
    CHECK(gw_real_vector(e) == Vec3{});

    CounterRng rng(14, 0);
    for (int n = 0; n < 20; ++n) {
        C2 a;
        for (auto& v : a.a) v = {rng.normal(), rng.normal()};
        a = a + adjoint(a);
        const auto g = gw_decompose(a);
        CHECK(max_abs(gw_compose(g) - a) <= 1e-14);
        CHECK(gw_imag_max(g) <= 1e-14);
    }
}
