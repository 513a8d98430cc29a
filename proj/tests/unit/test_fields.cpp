#include <catch2/catch_amalgamated.hpp>

#include <diracsym/diracsym.hpp>

using namespace dsym;
using Catch::Approx;

TEST_CASE("zero field has no E or B") {
    const PotentialModel m = ZeroField{};
    CHECK(field_E(m, 0.3, {1, 2, 3}) == Vec3{});
    CHECK(field_B(m, 0.3, {1, 2, 3}) == Vec3{});
    CHECK(potential_V(m, 0.0, {1, 2, 3}) == 0.0);
}

TEST_CASE("coulomb gradient against finite differences") {
    const PotentialModel m = SmoothedCoulomb{0.3, 0.5};
    const Vec3 x{0.4, -0.7, 1.1};
    const Vec3 g = grad_V(m, 0.0, x);
    for (int j = 0; j < 3; ++j) {
        auto f = [&](double s) {
            Vec3 y = x;
            y[static_cast<std::size_t>(j)] = s;
            return potential_V(m, 0.0, y);
        };
        CHECK(g[static_cast<std::size_t>(j)] == Approx(fd::d1(f, x[static_cast<std::size_t>(j)])).epsilon(1e-8));
    }
}

TEST_CASE("uniform B model reproduces its field") {
    const Vec3 B{0.3, -0.2, 0.5};
    const PotentialModel m = UniformB{B};
    for (const Vec3& x : {Vec3{}, Vec3{1, 2, 3}, Vec3{-4, 0.5, 2}}) {
        const Vec3 b = field_B(m, 0.0, x);
        for (std::size_t j = 0; j < 3; ++j) CHECK(b[j] == Approx(B[j]).margin(1e-14));
        CHECK(field_E(m, 0.0, x) == Vec3{});
    }
}

TEST_CASE("plane wave fields are transverse with |E| = |B|") {
    const PotentialModel m = PlaneWave{0.3, 1.2};
    CounterRng rng(31, 0);
    for (int n = 0; n < 10; ++n) {
        const double t = rng.uniform(0.0, 5.0);
        const Vec3 x = rng.normal3(2.0);
        const Vec3 E = field_E(m, t, x), B = field_B(m, t, x);
        CHECK(E[0] == Approx(0.0).margin(1e-15));
        CHECK(B[0] == Approx(0.0).margin(1e-15));
        CHECK(norm(E) == Approx(norm(B)).margin(1e-14));
        CHECK(dot(E, B) == Approx(0.0).margin(1e-14));
        // curl and time derivative against FD on A
        const Vec3 dA = dA_dt(m, t, x);
        const Vec3 fdA = fd::d1([&](double s) { return potential_A(m, s, x); }, t);
        CHECK(norm(dA - fdA) < 1e-9);
    }
}

TEST_CASE("time independence flags") {
    CHECK(time_independent(ZeroField{}));
    CHECK(time_independent(SmoothedCoulomb{}));
    CHECK(time_independent(UniformB{}));
    CHECK_FALSE(time_independent(PlaneWave{}));
}
