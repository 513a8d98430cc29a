#pragma once

#include <array>
#include <cmath>
#include <string>
#include <variant>

#include "matrix.hpp"

namespace dsym {

struct ZeroField {};
struct SmoothedCoulomb {
    double cf = 1.0 / 137.035999;
    double r0 = 0.1;
};
// symmetric gauge A = B x x / 2; grows linearly, test use only
struct UniformB {
    Vec3 B{0.0, 0.0, 1.0};
};
// A = (0, eps0 sin w(x1 - t), 0), V = 0
struct PlaneWave {
    double eps0 = 0.1;
    double omega = 1.0;
};

using PotentialModel = std::variant<ZeroField, SmoothedCoulomb, UniformB, PlaneWave>;

// J[j][k] = dA_j / dx_k
using Jac3 = std::array<Vec3, 3>;

inline double potential_V(const PotentialModel& m, double /*t*/, const Vec3& x) {
    if (auto* c = std::get_if<SmoothedCoulomb>(&m)) return -c->cf / std::sqrt(norm2(x) + c->r0 * c->r0);
    return 0.0;
}

inline Vec3 potential_A(const PotentialModel& m, double t, const Vec3& x) {
    if (auto* u = std::get_if<UniformB>(&m)) return 0.5 * cross(u->B, x);
    if (auto* w = std::get_if<PlaneWave>(&m)) return {0.0, w->eps0 * std::sin(w->omega * (x[0] - t)), 0.0};
    return {};
}

inline Vec3 grad_V(const PotentialModel& m, double /*t*/, const Vec3& x) {
    if (auto* c = std::get_if<SmoothedCoulomb>(&m)) {
        const double s = norm2(x) + c->r0 * c->r0;
        return (c->cf / (s * std::sqrt(s))) * x;
    }
    return {};
}

inline Jac3 jacobian_A(const PotentialModel& m, double t, const Vec3& x) {
    Jac3 J{};
    if (auto* u = std::get_if<UniformB>(&m)) {
        for (int k = 0; k < 3; ++k) {
            const Vec3 col = 0.5 * cross(u->B, Vec3::unit(k));
            for (int j = 0; j < 3; ++j) J[j][k] = col[j];
        }
    } else if (auto* w = std::get_if<PlaneWave>(&m)) {
        J[1][0] = w->eps0 * w->omega * std::cos(w->omega * (x[0] - t));
    }
    return J;
}

inline Vec3 dA_dt(const PotentialModel& m, double t, const Vec3& x) {
    if (auto* w = std::get_if<PlaneWave>(&m)) return {0.0, -w->eps0 * w->omega * std::cos(w->omega * (x[0] - t)), 0.0};
    return {};
}

inline Vec3 field_E(const PotentialModel& m, double t, const Vec3& x) {
    return -1.0 * (dA_dt(m, t, x) + grad_V(m, t, x));
}

inline Vec3 field_B(const PotentialModel& m, double t, const Vec3& x) {
    const Jac3 J = jacobian_A(m, t, x);
    return {J[2][1] - J[1][2], J[0][2] - J[2][0], J[1][0] - J[0][1]};
}

inline bool time_independent(const PotentialModel& m) { return !std::holds_alternative<PlaneWave>(m); }

inline std::string model_name(const PotentialModel& m) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ZeroField>) return "zero";
            else if constexpr (std::is_same_v<T, SmoothedCoulomb>) return "coulomb";
            else if constexpr (std::is_same_v<T, UniformB>) return "uniform_b";
            else return "plane_wave";
        },
        m);
}

}  // namespace dsym
