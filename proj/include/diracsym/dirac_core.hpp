#pragma once

#include <array>
#include <cmath>

#include "fields.hpp"
#include "matrix.hpp"

namespace dsym {

enum class DiracVariant { Standard, Radiation };

struct DiracSet {
    DiracVariant variant;
    std::array<C4, 3> alpha;
    C4 beta;
    std::array<C2, 3> sigma;
};

inline DiracSet make_dirac_set(DiracVariant variant) {
    DiracSet s{variant, {}, {}, {pauli(1), pauli(2), pauli(3)}};
    const C2 I2 = C2::identity();
    const C2 O2{};
    if (variant == DiracVariant::Standard) {
        for (int j = 0; j < 3; ++j)
            s.alpha[j] = blocks(O2, I_unit * s.sigma[j], -I_unit * s.sigma[j], O2);
        s.beta = blocks(I2, O2, O2, -I2);
    } else {
        s.alpha[0] = blocks(-I2, O2, O2, I2);
        s.alpha[1] = blocks(O2, I_unit * s.sigma[2], -I_unit * s.sigma[2], O2);
        s.alpha[2] = blocks(O2, I_unit * s.sigma[1], -I_unit * s.sigma[1], O2);
        s.beta = blocks(O2, I2, I2, O2);
    }
    return s;
}

inline const DiracSet& standard_set() {
    static const DiracSet s = make_dirac_set(DiracVariant::Standard);
    return s;
}

inline const DiracSet& radiation_set() {
    static const DiracSet s = make_dirac_set(DiracVariant::Radiation);
    return s;
}

// max entry of all anticommutator residuals among alpha_1..3, beta
inline double clifford_residual(const DiracSet& s) {
    std::array<C4, 4> g{s.alpha[0], s.alpha[1], s.alpha[2], s.beta};
    double r = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int l = j; l < 4; ++l) {
            C4 target = (j == l) ? 2.0 * C4::identity() : C4{};
            r = std::max(r, max_abs(anticomm(g[j], g[l]) - target));
        }
    return r;
}

inline C4 alpha_dot(const DiracSet& s, const Vec3& z) {
    return z[0] * s.alpha[0] + z[1] * s.alpha[1] + z[2] * s.alpha[2];
}

// ── local forms in terms of zeta = xi - A and V ─────────────────────────────

inline C4 h_local(const DiracSet& s, const Vec3& zeta, double V = 0.0) {
    return alpha_dot(s, zeta) + s.beta + scalar<4>(V);
}

inline C4 p_local(const DiracSet& s, int sign, const Vec3& zeta) {
    const C4 h = alpha_dot(s, zeta) + s.beta;
    return 0.5 * (C4::identity() + (static_cast<double>(sign) / jbr(zeta)) * h);
}

// Upsilon_+ = (1+u0 ; -i sigma.u),  Upsilon_- = (-i sigma.u ; 1+u0), u = zeta/<zeta>, u0 = 1/<zeta>
inline C42 upsilon_cols_local(int sign, const Vec3& zeta) {
    const double b = jbr(zeta);
    const C2 top = scalar<2>(1.0 + 1.0 / b);
    const C2 su = (-I_unit / b) * sigma_dot(zeta);
    return sign > 0 ? stack(top, su) : stack(su, top);
}

inline C4 upsilon_local(const Vec3& zeta) {
    const double b = jbr(zeta);
    const double n = 1.0 / std::sqrt(2.0 * (1.0 + 1.0 / b));
    const C42 up = upsilon_cols_local(+1, zeta);
    const C42 um = upsilon_cols_local(-1, zeta);
    C4 U;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            U(i, j) = n * up(i, j);
            U(i, j + 2) = n * um(i, j);
        }
    return U;
}

// kappa = Upsilon^* p q p Upsilon / (2(1+u0)), standard set
inline C2 restrict_local(const C4& q, int sign, const Vec3& zeta) {
    const C4 p = p_local(standard_set(), sign, zeta);
    const C42 U = upsilon_cols_local(sign, zeta);
    return (adjoint(U) * (p * q * p) * U) / (2.0 * (1.0 + 1.0 / jbr(zeta)));
}

// ── model-level operations ──────────────────────────────────────────────────

inline Vec3 zeta_at(const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return xi - potential_A(m, t, x);
}

inline C4 symbol_h(const DiracSet& s, const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return h_local(s, zeta_at(m, t, x, xi), potential_V(m, t, x));
}

struct LambdaPair {
    double plus;
    double minus;
};

inline LambdaPair eigen_lambda(const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    const double V = potential_V(m, t, x);
    const double b = jbr(zeta_at(m, t, x, xi));
    return {V + b, V - b};
}

inline double lambda_sign(int sign, const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    const auto l = eigen_lambda(m, t, x, xi);
    return sign > 0 ? l.plus : l.minus;
}

inline C4 projection_p(const DiracSet& s, int sign, const PotentialModel& m, double t, const Vec3& x,
                       const Vec3& xi) {
    return p_local(s, sign, zeta_at(m, t, x, xi));
}

inline C4 diagonalizer_upsilon(const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return upsilon_local(zeta_at(m, t, x, xi));
}

inline C42 eigencolumns(int sign, const PotentialModel& m, double t, const Vec3& x, const Vec3& xi) {
    return upsilon_cols_local(sign, zeta_at(m, t, x, xi));
}

inline C2 restrict_to_eigenspace(const C4& q, int sign, const PotentialModel& m, double t, const Vec3& x,
                                 const Vec3& xi) {
    return restrict_local(q, sign, zeta_at(m, t, x, xi));
}

// inverse of restrict: Upsilon kappa Upsilon^* / (2(1+u0)) = p q p
inline C4 reconstruct_from_kappa(const C2& kappa, int sign, const Vec3& zeta) {
    const C42 U = upsilon_cols_local(sign, zeta);
    return (U * kappa * adjoint(U)) / (2.0 * (1.0 + 1.0 / jbr(zeta)));
}

// ── Garding-Wightman decomposition a = k0 + kappa . sigma ──────────────────

struct GWDecomp {
    cplx kappa0;
    std::array<cplx, 3> kappa;
};

inline GWDecomp gw_decompose(const C2& a) {
    GWDecomp d{0.5 * trace(a), {}};
    for (int j = 0; j < 3; ++j) d.kappa[j] = 0.5 * trace(pauli(j + 1) * a);
    return d;
}

inline C2 gw_compose(const GWDecomp& d) {
    C2 a = scalar<2>(d.kappa0);
    for (int j = 0; j < 3; ++j) a += d.kappa[j] * pauli(j + 1);
    return a;
}

inline Vec3 gw_real_vector(const GWDecomp& d) { return {d.kappa[0].real(), d.kappa[1].real(), d.kappa[2].real()}; }

inline double gw_imag_max(const GWDecomp& d) {
    double m = std::abs(d.kappa0.imag());
    for (const auto& k : d.kappa) m = std::max(m, std::abs(k.imag()));
    return m;
}

template <std::size_t N>
Mat<N> traceless(const Mat<N>& a) {
    return a - scalar<N>(trace(a) / static_cast<double>(N));
}

}  // namespace dsym
