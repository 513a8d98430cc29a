#pragma once

#include <cmath>
#include <limits>
#include <complex>
#include <functional>
#include <vector>

#include "dirac_core.hpp"
#include "errors.hpp"
#include "fd.hpp"
#include "fields.hpp"
#include "ode.hpp"

namespace dsym {

struct PhasePoint {
    Vec3 x;
    Vec3 xi;
};

struct Trajectory {
    int sign = 1;
    std::vector<double> t;
    std::vector<PhasePoint> samples;
    IntegratorStats stats;

    const PhasePoint& back() const { return samples.back(); }
};

struct PhaseVelocity {
    Vec3 dx;
    Vec3 dxi;
};

// x' = lambda|xi, xi' = -lambda|x for lambda = V +- <xi - A>
inline PhaseVelocity hamilton_rhs(int sign, const PotentialModel& m, double t, const PhasePoint& p) {
    const double s = static_cast<double>(sign);
    const Vec3 z = zeta_at(m, t, p.x, p.xi);
    const double b = jbr(z);
    const Jac3 J = jacobian_A(m, t, p.x);
    Vec3 zJ;
    for (int k = 0; k < 3; ++k) zJ[k] = z[0] * J[0][k] + z[1] * J[1][k] + z[2] * J[2][k];
    return {(s / b) * z, (s / b) * zJ - grad_V(m, t, p.x)};
}

inline State<6> pack(const PhasePoint& p) { return {p.x[0], p.x[1], p.x[2], p.xi[0], p.xi[1], p.xi[2]}; }
inline PhasePoint unpack(const State<6>& y) { return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}; }

inline Trajectory integrate_flow(int sign, const PotentialModel& m, const PhasePoint& p0, double t, double tol,
                                 std::size_t n_samples = 2, double t0 = 0.0) {
    Trajectory tr;
    tr.sign = sign;
    tr.t = linspace(t0, t0 + t, std::max<std::size_t>(n_samples, 2));
    OdeOptions opt;
    opt.rtol = opt.atol = tol;
    auto rhs = [&](const State<6>& y, State<6>& dy, double tt) {
        const auto v = hamilton_rhs(sign, m, tt, unpack(y));
        for (int k = 0; k < 3; ++k) dy[k] = v.dx[k], dy[k + 3] = v.dxi[k];
    };
    const auto ys = integrate_dense<6>(rhs, pack(p0), t0, tr.t, opt, &tr.stats);
    for (const auto& y : ys) tr.samples.push_back(unpack(y));
    return tr;
}

inline PhasePoint flow_map(int sign, const PotentialModel& m, const PhasePoint& p0, double t, double tol,
                           double t0 = 0.0) {
    if (t == 0.0) return p0;
    return integrate_flow(sign, m, p0, t, tol, 2, t0).back();
}

inline Vec3 velocity_from_zeta(const Vec3& zeta) { return zeta / jbr(zeta); }

inline Vec3 zeta_from_velocity(const Vec3& v) {
    const double v2 = norm2(v);
    if (!(v2 < 1.0)) throw SuperluminalInput("|v| >= 1");
    // 1 - v2 at the rounding level carries no digits
    if (1.0 - v2 <= 4.0 * std::numeric_limits<double>::epsilon()) throw SuperluminalInput("|v| too close to 1");
    const double g = std::sqrt(1.0 - v2);
    return v / g;
}

// max over interior samples of |d/dt (x'/sqrt(1-x'^2)) - sign (E + x' x B)|
inline double lorentz_residual(int sign, const PotentialModel& m, const Trajectory& tr) {
    const std::size_t n = tr.samples.size();
    if (n < 5) return 0.0;
    const double s = static_cast<double>(sign);
    std::vector<Vec3> mom(n), vel(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = tr.samples[i];
        vel[i] = hamilton_rhs(sign, m, tr.t[i], p).dx;
        mom[i] = zeta_from_velocity(vel[i]);
    }
    double r = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double h = tr.t[i + 1] - tr.t[i];
        const Vec3 d = (8.0 * (mom[i + 1] - mom[i - 1]) - (mom[i + 2] - mom[i - 2])) / (12.0 * h);
        const auto& p = tr.samples[i];
        const Vec3 force = s * (field_E(m, tr.t[i], p.x) + cross(vel[i], field_B(m, tr.t[i], p.x)));
        r = std::max(r, norm(d - force));
    }
    return r;
}

using PhaseFunction = std::function<cplx(double, const Vec3&, const Vec3&)>;

// q_t(p) = q(nu_t(p))
inline cplx transport_scalar(const PhaseFunction& q, int sign, const PotentialModel& m, double t,
                             const PhasePoint& p, double tol = 1e-12) {
    const PhasePoint e = flow_map(sign, m, p, t, tol);
    return q(t, e.x, e.xi);
}

// d_t q_t - {lambda, q_t} at p by finite differences
inline double transport_pde_residual(const PhaseFunction& q, int sign, const PotentialModel& m, double t,
                                     const PhasePoint& p, double tol = 1e-12) {
    auto qt = [&](double tt, const Vec3& x, const Vec3& xi) { return transport_scalar(q, sign, m, tt, {x, xi}, tol); };
    const double h = 1e-3;
    const cplx dt = fd::d1([&](double s) { return qt(s, p.x, p.xi); }, t, h);
    const auto v = hamilton_rhs(sign, m, 0.0, p);
    cplx br{};
    for (int k = 0; k < 3; ++k) {
        const cplx dqx = fd::d1([&](double s) { Vec3 y = p.x; y[k] = s; return qt(t, y, p.xi); }, p.x[k], h);
        const cplx dqxi = fd::d1([&](double s) { Vec3 y = p.xi; y[k] = s; return qt(t, p.x, y); }, p.xi[k], h);
        br += v.dx[k] * dqx + v.dxi[k] * dqxi;
    }
    return std::abs(dt - br);
}

}  // namespace dsym
