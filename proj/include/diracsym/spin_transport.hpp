#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "classical_flow.hpp"
#include "dirac_core.hpp"
#include "errors.hpp"
#include "fd.hpp"
#include "fields.hpp"
#include "ode.hpp"

namespace dsym {

struct KappaState {
    Vec3 vec;
    double kappa0 = 0.0;
};

namespace detail {

inline C42 upsilon_at(int sign, const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return upsilon_cols_local(sign, zeta_at(m, t, x, xi));
}

inline C42 omega_at(int sign, const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    const Vec3 z = zeta_at(m, t, x, xi);
    return upsilon_cols_local(sign, z) / (2.0 * (1.0 + 1.0 / jbr(z)));
}

// d/ds f(nu_s(p)) at s = 0 along the flow generated by lambda_sign
template <class F>
auto along_flow(F&& f, int sign, const PotentialModel& m, double t, const PhasePoint& p, double h) {
    const auto v = hamilton_rhs(sign, m, t, p);
    auto g = [&](double s) { return f(t + s, p.x + s * v.dx, p.xi + s * v.dxi); };
    return fd::d1(g, 0.0, h);
}

// sum_k p p|xi_k p|x_k p
inline C4 pxi_px(int sign, const PotentialModel& m, double t, const PhasePoint& p, double h) {
    const DiracSet& s = standard_set();
    auto P = [&](const Vec3& x, const Vec3& xi) { return projection_p(s, sign, m, t, x, xi); };
    const C4 p0 = P(p.x, p.xi);
    C4 acc;
    for (int k = 0; k < 3; ++k) {
        const C4 dxi = fd::d1([&](double u) { Vec3 y = p.xi; y[k] = u; return P(p.x, y); }, p.xi[k], h);
        const C4 dx = fd::d1([&](double u) { Vec3 y = p.x; y[k] = u; return P(y, p.xi); }, p.x[k], h);
        acc += dxi * dx;
    }
    return p0 * acc * p0;
}

}  // namespace detail

inline constexpr double theta_fd_step = 1e-4;

// Theta = Omega^* Upsilon' -+ 2<zeta> Omega^* (sum_k p p|xi_k p|x_k p) Upsilon,  ' along the flow
inline C2 theta_numeric(int sign, const PotentialModel& m, double t, const PhasePoint& p,
                        double h = theta_fd_step) {
    const Vec3 z = zeta_at(m, t, p.x, p.xi);
    const C42 U = detail::upsilon_at(sign, m, t, p.x, p.xi);
    const C42 Om = detail::omega_at(sign, m, t, p.x, p.xi);
    const C42 dU = detail::along_flow(
        [&](double tt, const Vec3& x, const Vec3& xi) { return detail::upsilon_at(sign, m, tt, x, xi); }, sign, m, t,
        p, h);
    const C4 M = detail::pxi_px(sign, m, t, p, h);
    return adjoint(Om) * dU - (2.0 * sign * jbr(z)) * (adjoint(Om) * M * U);
}

// same quantity through -Omega^*' Upsilon
inline C2 theta_numeric_adjoint_path(int sign, const PotentialModel& m, double t, const PhasePoint& p,
                                     double h = theta_fd_step) {
    const Vec3 z = zeta_at(m, t, p.x, p.xi);
    const C42 U = detail::upsilon_at(sign, m, t, p.x, p.xi);
    const C42 Om = detail::omega_at(sign, m, t, p.x, p.xi);
    const C42 dOm = detail::along_flow(
        [&](double tt, const Vec3& x, const Vec3& xi) { return detail::omega_at(sign, m, tt, x, xi); }, sign, m, t, p,
        h);
    const C4 M = detail::pxi_px(sign, m, t, p, h);
    return -1.0 * (adjoint(dOm) * U) - (2.0 * sign * jbr(z)) * (adjoint(Om) * M * U);
}

// -(i/2) sigma . F
inline C2 theta_from_field(const Vec3& F) { return (-0.5 * I_unit) * sigma_dot(F); }

// vector F with traceless(Theta) = -(i/2) sigma . F
inline Vec3 field_from_theta(const C2& theta) {
    const GWDecomp d = gw_decompose(theta);
    return {(2.0 * I_unit * d.kappa[0]).real(), (2.0 * I_unit * d.kappa[1]).real(), (2.0 * I_unit * d.kappa[2]).real()};
}

inline Vec3 field_F_local(const Vec3& z, const Vec3& E, const Vec3& B) {
    const double b = jbr(z);
    const double zB = dot(z, B);
    const Vec3 first = (1.0 / (b * (1.0 + b))) * (-1.0 * cross(z, E) + (1.0 / b) * (norm2(z) * B - zB * z));
    const Vec3 second = (1.0 / (b * b)) * (B + (zB / (1.0 + b)) * z);
    return first - second;
}

inline Vec3 field_F(const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return field_F_local(zeta_at(m, t, x, xi), field_E(m, t, x), field_B(m, t, x));
}

// precession vector for the sign-branch: F+(zeta) = F(zeta), F-(zeta) = -F(-zeta)
inline Vec3 field_F_signed_local(int sign, const Vec3& z, const Vec3& E, const Vec3& B) {
    return sign > 0 ? field_F_local(z, E, B) : -1.0 * field_F_local(-1.0 * z, E, B);
}

inline Vec3 field_F_signed(int sign, const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return field_F_signed_local(sign, zeta_at(m, t, x, xi), field_E(m, t, x), field_B(m, t, x));
}

inline Vec3 b_tilde(const Vec3& E, const Vec3& B, const Vec3& v) {
    const double v2 = norm2(v);
    if (!(v2 < 1.0)) throw SuperluminalInput("|v| >= 1 in b_tilde");
    return B + (1.0 / (1.0 + std::sqrt(1.0 - v2))) * cross(v, E);
}

// d kappa / d tau = F_sign x kappa
inline Vec3 kappa_rhs(int sign, const PotentialModel& m, double t, const PhasePoint& p, const Vec3& kappa) {
    return cross(field_F_signed(sign, m, t, p.x, p.xi), kappa);
}

// sqrt(1 - x'^2) (sign) kappa x B~(x')
inline Vec3 kappa_rhs_btilde(int sign, const PotentialModel& m, double t, const PhasePoint& p, const Vec3& kappa) {
    const Vec3 v = hamilton_rhs(sign, m, t, p).dx;
    const Vec3 Bt = b_tilde(field_E(m, t, p.x), field_B(m, t, p.x), v);
    return (static_cast<double>(sign) * std::sqrt(1.0 - norm2(v))) * cross(kappa, Bt);
}

inline double kappa_rhs_consistency(int sign, const PotentialModel& m, double t, const PhasePoint& p,
                                    const std::vector<Vec3>& kappas) {
    double r = 0.0;
    for (const auto& k : kappas) r = std::max(r, norm(kappa_rhs(sign, m, t, p, k) - kappa_rhs_btilde(sign, m, t, p, k)));
    return r;
}

struct KappaSample {
    double t;
    PhasePoint p;
    Vec3 kappa;
};

struct KappaTrace {
    std::vector<KappaSample> samples;
    IntegratorStats stats;
    KappaState final_state;
};

// co-integrates the flow and the kappa vector
inline KappaTrace integrate_kappa_trace(int sign, const PotentialModel& m, const PhasePoint& p0, const KappaState& k0,
                                        double t, double tol, std::size_t n_samples = 2) {
    OdeOptions opt;
    opt.rtol = opt.atol = tol;
    auto rhs = [&](const State<9>& y, State<9>& dy, double tt) {
        const PhasePoint p{{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
        const auto v = hamilton_rhs(sign, m, tt, p);
        const Vec3 dk = kappa_rhs(sign, m, tt, p, {y[6], y[7], y[8]});
        for (int k = 0; k < 3; ++k) dy[k] = v.dx[k], dy[k + 3] = v.dxi[k], dy[k + 6] = dk[k];
    };
    const State<9> y0{p0.x[0], p0.x[1], p0.x[2], p0.xi[0], p0.xi[1], p0.xi[2], k0.vec[0], k0.vec[1], k0.vec[2]};
    const auto ts = linspace(0.0, t, std::max<std::size_t>(n_samples, 2));
    KappaTrace tr;
    const auto ys = integrate_dense<9>(rhs, y0, 0.0, ts, opt, &tr.stats);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const auto& y = ys[i];
        tr.samples.push_back({ts[i], {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}}, {y[6], y[7], y[8]}});
    }
    tr.final_state = {tr.samples.back().kappa, k0.kappa0};
    return tr;
}

inline KappaState integrate_kappa(int sign, const PotentialModel& m, const PhasePoint& p0, const KappaState& k0,
                                  double t, double tol) {
    return integrate_kappa_trace(sign, m, p0, k0, t, tol).final_state;
}

// kappa transport under a frozen precession vector F (phase point held fixed)
inline Vec3 integrate_kappa_frozen(const Vec3& F, const Vec3& k0, double t, double tol) {
    OdeOptions opt;
    opt.rtol = opt.atol = tol;
    auto rhs = [&](const State<3>& y, State<3>& dy, double) {
        const Vec3 d = cross(F, Vec3{y[0], y[1], y[2]});
        dy = {d[0], d[1], d[2]};
    };
    const auto ys = integrate_dense<3>(rhs, {k0[0], k0[1], k0[2]}, 0.0, {t}, opt);
    return {ys.back()[0], ys.back()[1], ys.back()[2]};
}

// ── spin observables ────────────────────────────────────────────────────────

inline C4 spin_matrix(int j) {
    const C2 s = 0.5 * pauli(j);
    return blocks(s, C2{}, C2{}, s);
}

inline double lorentz_factor_inv(const Vec3& v) {
    const double v2 = norm2(v);
    if (!(v2 < 1.0)) throw SuperluminalInput("|v| >= 1 in spin kappa");
    return std::sqrt(1.0 - v2);
}

inline C2 spin_kappa_matrix(int j, const Vec3& v) {
    const double g = lorentz_factor_inv(v);
    return (0.5 * g) * (pauli(j) + (v[j - 1] / (g * (1.0 + g))) * sigma_dot(v));
}

inline Vec3 spin_kappa_vector(int j, const Vec3& v) {
    const double g = lorentz_factor_inv(v);
    Vec3 out;
    for (int l = 0; l < 3; ++l)
        out[l] = 0.5 * g * ((j - 1 == l ? 1.0 : 0.0) + v[j - 1] * v[l] / (g * (1.0 + g)));
    return out;
}

// split form: parallel part 1/2 (v_j/|v|) v/|v|, perpendicular part shortened by sqrt(1-v^2)
inline Vec3 spin_kappa_vector_split(int j, const Vec3& v) {
    const double g = lorentz_factor_inv(v);
    const Vec3 e = Vec3::unit(j - 1);
    const double vn = norm(v);
    if (vn == 0.0) return 0.5 * e;
    const Vec3 n = v / vn;
    const Vec3 par = dot(e, n) * n;
    return 0.5 * par + (0.5 * g) * (e - par);
}

inline C4 spin_corrected_symbol(const PotentialModel& m, double t, const Vec3& x, const Vec3& xi, int j) {
    const DiracSet& s = standard_set();
    const C4 pp = projection_p(s, +1, m, t, x, xi);
    const C4 pm = projection_p(s, -1, m, t, x, xi);
    const C4 S = spin_matrix(j);
    return pp * S * pp + pm * S * pm;
}

}  // namespace dsym
