#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dirac_core.hpp"
#include "errors.hpp"
#include "fd.hpp"
#include "planewave.hpp"
#include "quadrature.hpp"
#include "symbol_calculus.hpp"

namespace dsym {

struct TransverseParams {
    double xi2 = 0.0;
    double xi3 = 0.0;
    PlaneWaveConfig cfg;
};

inline double A2_of(const TransverseParams& p, double x1) { return p.cfg.epsilon0 * std::sin(p.cfg.omega * x1); }

struct PQ {
    C2 p;
    C2 q;
};

inline PQ p_q_matrices(const TransverseParams& prm, double x1) {
    const C2 P = (prm.xi2 - A2_of(prm, x1)) * pauli(3) + prm.xi3 * pauli(2);
    return {P - I_unit * C2::identity(), P + I_unit * C2::identity()};
}

// <P(x1)>^2
inline double bracket_P2(const TransverseParams& prm, double x1) {
    const double a = prm.xi2 - A2_of(prm, x1);
    return 1.0 + a * a + prm.xi3 * prm.xi3;
}

// rho(x1) = int_0^x1 <P>^2
inline double rho(const TransverseParams& prm, double x1) {
    const double e = prm.cfg.epsilon0, w = prm.cfg.omega;
    return (1.0 + prm.xi2 * prm.xi2 + prm.xi3 * prm.xi3) * x1 - 2.0 * prm.xi2 * e * (1.0 - std::cos(w * x1)) / w +
           e * e * (0.5 * x1 - std::sin(2.0 * w * x1) / (4.0 * w));
}

struct CD {
    double c;
    double d;
    double a2;
};

// averages of A2 and A2^2 over [x1, y1]
inline CD cd_functions(const TransverseParams& prm, double x1, double y1) {
    const double e = prm.cfg.epsilon0, w = prm.cfg.omega;
    const double c = e * std::sin(w * (x1 + y1) / 2.0) * sinc(w * (x1 - y1) / 2.0);
    const double d = 0.5 * e * e - 0.5 * e * e * std::cos(w * (x1 + y1)) * sinc(w * (x1 - y1));
    return {c, d, 1.0 + d - c * c};
}

// (rho(x1) - rho(y1)) / (x1 - y1) = (xi2 - c)^2 + xi3^2 + a^2
inline double iota2(const TransverseParams& prm, double x1, double y1) {
    const CD k = cd_functions(prm, x1, y1);
    const double a = prm.xi2 - k.c;
    return a * a + prm.xi3 * prm.xi3 + k.a2;
}

using Spinor4 = std::array<cplx, 4>;

inline cplx eigen_phase(const TransverseParams& prm, double lambda, double x1) {
    return std::exp(I_unit * (-0.5 * lambda * x1 + rho(prm, x1) / (2.0 * lambda)));
}

// (i lambda c, q c) e^{-i lambda x1/2 + i rho(x1)/(2 lambda)}
inline Spinor4 eigenfunction(const TransverseParams& prm, double lambda, const std::array<cplx, 2>& c, double x1) {
    if (lambda == 0.0) throw ZeroLambda("eigenfunction needs lambda != 0");
    const cplx E = eigen_phase(prm, lambda, x1);
    const C2 q = p_q_matrices(prm, x1).q;
    return {I_unit * lambda * c[0] * E, I_unit * lambda * c[1] * E, (q(0, 0) * c[0] + q(0, 1) * c[1]) * E,
            (q(1, 0) * c[0] + q(1, 1) * c[1]) * E};
}

struct EigenResidual {
    double differential;  // |-2u' - i lambda u - p v|
    double algebraic;     // |q u - i lambda v|
};

inline EigenResidual eigenfunction_residual(const TransverseParams& prm, double lambda, const std::array<cplx, 2>& c,
                                            double x1, double h = 1e-3) {
    auto uv = [&](double x) { return eigenfunction(prm, lambda, c, x); };
    const Spinor4 s = uv(x1);
    std::array<cplx, 2> du{};
    for (int k = 0; k < 2; ++k) du[k] = fd::d1([&](double x) { return uv(x)[k]; }, x1, h);
    const auto [p, q] = p_q_matrices(prm, x1);
    EigenResidual r{0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
        const cplx pv = p(k, 0) * s[2] + p(k, 1) * s[3];
        const cplx qu = q(k, 0) * s[0] + q(k, 1) * s[1];
        r.differential = std::max(r.differential, std::abs(-2.0 * du[k] - I_unit * lambda * s[k] - pv));
        r.algebraic = std::max(r.algebraic, std::abs(qu - I_unit * lambda * s[k + 2]));
    }
    return r;
}

// H^j(mu, x1, tau) with lambda = mu - i eps for tau < x1 and mu + i eps for tau > x1
inline cplx greens_kernel(int j, const TransverseParams& prm, double mu, double x1, double tau, double eps) {
    const cplx lam = (tau <= x1) ? cplx(mu, -eps) : cplx(mu, eps);
    if (lam == cplx{}) throw ZeroMu("greens kernel at lambda = 0");
    cplx expo;
    if (eps == 0.0) {
        const double i2 = iota2(prm, x1, tau);
        expo = -0.5 * I_unit * (x1 - tau) * (lam - i2 / lam);
    } else {
        expo = -0.5 * I_unit * (lam * (x1 - tau) - (rho(prm, x1) - rho(prm, tau)) / lam);
    }
    return std::exp(expo) / std::pow(lam, j - 1);
}

// ── substitution lambda - iota^2/lambda = 2 mu ─────────────────────────────

struct TestProfile {
    std::function<cplx(double)> G;
    double lo;
    double hi;
};

// Gaussian centred at c with width s, truncated to [c - 9s, c + 9s]
inline TestProfile gaussian_profile(double c, double s, double phase_rate = 0.0) {
    return {[=](double l) {
                const double z = (l - c) / s;
                return std::exp(-0.5 * z * z) * std::exp(I_unit * (phase_rate * l));
            },
            c - 9.0 * s, c + 9.0 * s};
}

struct SubstitutionResult {
    std::array<cplx, 3> direct;       // 11, 12, 22
    std::array<cplx, 3> transformed;  // 11, 12, 22
    double residual;
};

inline SubstitutionResult substitution_consistency(const TransverseParams& prm, double x1, double tau,
                                                   const TestProfile& g, int branch, bool flip_22_minus = false) {
    SubstitutionResult r{};
    const double i2 = iota2(prm, x1, tau);
    const double dx = x1 - tau;
    const double lo = g.lo, hi = g.hi;
    if ((branch > 0 && lo <= 0.0) || (branch < 0 && hi >= 0.0))
        throw QuadratureFailure("test profile support must avoid lambda = 0 on the chosen branch", 0.0);
    for (int k = 0; k < 3; ++k) {
        r.direct[k] = quad::complex_ts(
            [&](double l) { return std::exp(-0.5 * I_unit * dx * (l - i2 / l)) * g.G(l) / std::pow(l, k); }, lo, hi,
            1e-12);
    }
    auto to_mu = [&](double l) { return 0.5 * (l - i2 / l); };
    const double s = static_cast<double>(branch);
    auto weight = [&](int k, double mu) {
        const double rt = std::sqrt(i2 + mu * mu);
        if (branch > 0) {
            if (k == 0) return 1.0 + mu / rt;
            if (k == 1) return 1.0 / rt;
            return (rt - mu) / (i2 * rt);
        }
        if (k == 0) return 1.0 - mu / rt;
        if (k == 1) return -1.0 / rt;
        return (flip_22_minus ? -1.0 : 1.0) * (rt + mu) / (i2 * rt);
    };
    for (int k = 0; k < 3; ++k) {
        r.transformed[k] = quad::complex_ts(
            [&](double mu) {
                const double l = mu + s * std::sqrt(i2 + mu * mu);
                return weight(k, mu) * std::exp(-I_unit * (mu * dx)) * g.G(l);
            },
            to_mu(lo), to_mu(hi), 1e-12);
    }
    r.residual = 0.0;
    for (int k = 0; k < 3; ++k) r.residual = std::max(r.residual, std::abs(r.direct[k] - r.transformed[k]));
    return r;
}

// ── projection block symbols ───────────────────────────────────────────────

struct ProjectionBlocks {
    C2 b11, b12, b21, b22;

    const C2& operator[](int k) const {
        switch (k) {
            case 0: return b11;
            case 1: return b12;
            case 2: return b21;
            default: return b22;
        }
    }
};

struct BlockGeometry {
    CD cd;
    double eta_t2;  // (xi2 - c)^2 + xi3^2
    double r;       // sqrt(eta^2 + a^2)
};

inline BlockGeometry block_geometry(const TransverseParams& prm, double x1, double y1, double xi1) {
    const CD k = cd_functions(prm, x1, y1);
    const double a = prm.xi2 - k.c;
    const double et2 = a * a + prm.xi3 * prm.xi3;
    return {k, et2, std::sqrt(xi1 * xi1 + et2 + k.a2)};
}

inline ProjectionBlocks proj_block_symbols(int sign, const TransverseParams& prm, double x1, double y1, double xi1) {
    const BlockGeometry g = block_geometry(prm, x1, y1, xi1);
    const double s = static_cast<double>(sign);
    const C2 py = p_q_matrices(prm, y1).p;
    const C2 qx = p_q_matrices(prm, x1).q;
    const C2 I2 = C2::identity();
    ProjectionBlocks b;
    b.b11 = (0.5 * (1.0 - s * xi1 / g.r)) * I2;
    b.b12 = (s * 0.5 * I_unit / g.r) * py;
    b.b21 = (-s * 0.5 * I_unit / g.r) * qx;
    b.b22 = (0.5 * (g.r + s * xi1) / ((g.eta_t2 + g.cd.a2) * g.r)) * (qx * py);
    return b;
}

// 2x2 blocks of the free radiation-set projections p_sign(xi)
inline ProjectionBlocks free_blocks(int sign, const Vec3& xi) {
    const C4 p = p_free(sign, xi);
    return {block(p, 0, 0), block(p, 0, 1), block(p, 1, 0), block(p, 1, 1)};
}

struct BlockSumResidual {
    double r11;
    double r12;
    double r21;
    double r22;  // against q(x1) p(y1) / (eta~^2 + a^2)
};

inline BlockSumResidual block_sum_residuals(const TransverseParams& prm, double x1, double y1, double xi1) {
    const auto P = proj_block_symbols(+1, prm, x1, y1, xi1);
    const auto M = proj_block_symbols(-1, prm, x1, y1, xi1);
    const BlockGeometry g = block_geometry(prm, x1, y1, xi1);
    const C2 target22 = (p_q_matrices(prm, x1).q * p_q_matrices(prm, y1).p) / (g.eta_t2 + g.cd.a2);
    return {max_abs(P.b11 + M.b11 - C2::identity()), max_abs(P.b12 + M.b12), max_abs(P.b21 + M.b21),
            max_abs(P.b22 + M.b22 - target22)};
}

// leading terms of b(x, xi) = sum_j (1/j!) {(-i d_y d_xi)^j a(x, y, xi)}_{y = x}, j = 0, 1
using LeftRightBlock = std::function<C2(double, double, double)>;

inline std::array<C2, 2> leibniz_reduce_leading(const LeftRightBlock& a, double x1, double xi1) {
    const double hy = fd::step(x1, 2), hx = fd::step(xi1, 2);
    auto dy = [&](double xi) { return fd::d1([&](double y) { return a(x1, y, xi); }, x1, hy); };
    const C2 mixed = fd::d1(dy, xi1, hx);
    return {a(x1, x1, xi1), -I_unit * mixed};
}

// <xi> max_blocks |p_block(x1, y1, xi) - p_free_block(xi)|, 22-block replaced by (1 + sign xi1/r)/2
inline double proj_vs_free_weighted(int sign, const PlaneWaveConfig& cfg, const Vec3& xi, double x1, double y1) {
    const TransverseParams prm{xi[1], xi[2], cfg};
    ProjectionBlocks b = proj_block_symbols(sign, prm, x1, y1, xi[0]);
    const BlockGeometry g = block_geometry(prm, x1, y1, xi[0]);
    b.b22 = (0.5 * (1.0 + sign * xi[0] / g.r)) * C2::identity();
    const ProjectionBlocks f = free_blocks(sign, xi);
    double m = 0.0;
    for (int k = 0; k < 4; ++k) m = std::max(m, max_abs(b[k] - f[k]));
    return jbr(xi) * m;
}

// closed form of the 11-block difference: |xi1|/2 |1/<xi> - 1/r| = |xi1| |d - 2 c xi2| / (2 <xi> r (<xi> + r))
inline double block11_difference_closed(const PlaneWaveConfig& cfg, const Vec3& xi, double x1, double y1) {
    const TransverseParams prm{xi[1], xi[2], cfg};
    const BlockGeometry g = block_geometry(prm, x1, y1, xi[0]);
    const double b = jbr(xi);
    return 0.5 * std::abs(xi[0]) * std::abs(g.cd.d - 2.0 * g.cd.c * xi[1]) / (b * g.r * (b + g.r));
}

struct DecaySweep {
    std::vector<double> radii;
    std::vector<double> weighted;
    SlopeFit fit;
};

inline DecaySweep proj_vs_free_residual(int sign, const PlaneWaveConfig& cfg, const Vec3& direction,
                                        const std::vector<double>& radii,
                                        const std::vector<std::pair<double, double>>& xy) {
    DecaySweep out;
    out.radii = radii;
    const Vec3 d = direction / norm(direction);
    for (double R : radii) {
        double m = 0.0;
        for (const auto& [x, y] : xy) m = std::max(m, proj_vs_free_weighted(sign, cfg, R * d, x, y));
        out.weighted.push_back(m);
    }
    out.fit = loglog_fit(out.radii, out.weighted);
    return out;
}

}  // namespace dsym
