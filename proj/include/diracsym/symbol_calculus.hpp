#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "dirac_core.hpp"
#include "errors.hpp"
#include "fd.hpp"

namespace dsym {

struct MatrixSymbol {
    std::function<C4(double, const Vec3&, const Vec3&)> eval;
    double order_xi = 0.0;
    double order_x = 0.0;
    double fd_step = fd::default_rel_step;

    C4 operator()(double t, const Vec3& x, const Vec3& xi) const { return eval(t, x, xi); }
};

// multi-index on (x1,x2,x3,xi1,xi2,xi3)
using MultiIndex6 = std::array<int, 6>;
using MultiIndex3 = std::array<int, 3>;

inline int total(const MultiIndex3& m) { return m[0] + m[1] + m[2]; }

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// nested central differences, one coordinate at a time
template <class F>
C4 partial(const F& f, std::array<double, 6> z, MultiIndex6 idx, int order_total, double rel) {
    int c = -1;
    for (int k = 0; k < 6; ++k)
        if (idx[k] > 0) { c = k; break; }
    if (c < 0) return f(z);
    --idx[c];
    const double h = fd::step(z[c], order_total, rel);
    auto g = [&](double s) {
        auto w = z;
        w[c] = s;
        return partial(f, w, idx, order_total, rel);
    };
    return fd::d1(g, z[c], h);
}

}  // namespace detail

// d_x^theta d_xi^iota s at (t, x, xi)
inline C4 derivative(const MatrixSymbol& s, double t, const Vec3& x, const Vec3& xi, const MultiIndex3& theta_x,
                     const MultiIndex3& iota_xi) {
    const MultiIndex6 idx{theta_x[0], theta_x[1], theta_x[2], iota_xi[0], iota_xi[1], iota_xi[2]};
    const int k = total(theta_x) + total(iota_xi);
    auto f = [&](const std::array<double, 6>& z) { return s(t, Vec3{z[0], z[1], z[2]}, Vec3{z[3], z[4], z[5]}); };
    return detail::partial(f, {x[0], x[1], x[2], xi[0], xi[1], xi[2]}, idx, k, s.fd_step);
}

// {a,b}_1 = a|xi b|x - b|xi a|x ; {a,b}_2 = sum_ij a|xi_i xi_j b|x_i x_j - b|xi_i xi_j a|x_i x_j
inline C4 poisson_bracket(const MatrixSymbol& a, const MatrixSymbol& b, int k, double t, const Vec3& x,
                          const Vec3& xi) {
    C4 out;
    if (k == 1) {
        for (int j = 0; j < 3; ++j) {
            MultiIndex3 e{};
            e[j] = 1;
            out += derivative(a, t, x, xi, {}, e) * derivative(b, t, x, xi, e, {});
            out -= derivative(b, t, x, xi, {}, e) * derivative(a, t, x, xi, e, {});
        }
        return out;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            MultiIndex3 e{};
            ++e[i];
            ++e[j];
            out += derivative(a, t, x, xi, {}, e) * derivative(b, t, x, xi, e, {});
            out -= derivative(b, t, x, xi, {}, e) * derivative(a, t, x, xi, e, {});
        }
    return out;
}

inline std::vector<MultiIndex3> multi_indices(int max_total) {
    std::vector<MultiIndex3> v;
    for (int n = 0; n <= max_total; ++n)
        for (int a = n; a >= 0; --a)
            for (int b = n - a; b >= 0; --b) v.push_back({a, b, n - a - b});
    return v;
}

inline double multi_factorial(const MultiIndex3& m) {
    return detail::factorial(m[0]) * detail::factorial(m[1]) * detail::factorial(m[2]);
}

inline cplx minus_i_pow(int n) {
    static constexpr std::array<cplx, 4> p{cplx{1, 0}, cplx{0, -1}, cplx{-1, 0}, cplx{0, 1}};
    return p[static_cast<std::size_t>(n % 4)];
}

// sum_{|theta|<=N} (-i)^|theta| / theta! d_xi^theta a d_x^theta b
inline C4 leibniz_product(const MatrixSymbol& a, const MatrixSymbol& b, int N, double t, const Vec3& x,
                          const Vec3& xi) {
    C4 out;
    for (const auto& th : multi_indices(N)) {
        const cplx c = minus_i_pow(total(th)) / multi_factorial(th);
        out += c * (derivative(a, t, x, xi, {}, th) * derivative(b, t, x, xi, th, {}));
    }
    return out;
}

// sum_{|theta|<=N} (-i)^|theta| / theta! d_xi^theta d_x^theta a^*
inline C4 leibniz_adjoint(const MatrixSymbol& a, int N, double t, const Vec3& x, const Vec3& xi) {
    MatrixSymbol as{[&a](double tt, const Vec3& xx, const Vec3& yy) { return adjoint(a(tt, xx, yy)); },
                    a.order_xi, a.order_x, a.fd_step};
    C4 out;
    for (const auto& th : multi_indices(N)) {
        const cplx c = minus_i_pow(total(th)) / multi_factorial(th);
        out += c * derivative(as, t, x, xi, th, th);
    }
    return out;
}

// ── order probing ───────────────────────────────────────────────────────────

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

inline SlopeFit loglog_fit(const std::vector<double>& r, const std::vector<double>& y) {
    const std::size_t n = r.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(r[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    SlopeFit f;
    const double dn = static_cast<double>(n);
    f.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / dn;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::log(y[i]) - (f.intercept + f.slope * std::log(r[i]));
        ss += e * e;
    }
    f.rms = std::sqrt(ss / dn);
    return f;
}

inline const std::array<Vec3, 8>& sphere8() {
    static const std::array<Vec3, 8> d = [] {
        std::array<Vec3, 8> out;
        const double c = 1.0 / std::sqrt(3.0);
        int k = 0;
        for (int a = -1; a <= 1; a += 2)
            for (int b = -1; b <= 1; b += 2)
                for (int e = -1; e <= 1; e += 2) out[k++] = Vec3{a * c, b * c, e * c};
        return out;
    }();
    return d;
}

struct OrderProbe {
    SlopeFit xi;
    SlopeFit x;
    bool xi_ok = true;
    bool x_ok = true;
};

// sup over 8 directions of |d_x^theta d_xi^iota s| at |xi| = R (x fixed at base_x),
// and at |x| = R (xi fixed at base_xi)
inline OrderProbe order_probe(const MatrixSymbol& s, const MultiIndex3& theta, const MultiIndex3& iota,
                              const std::vector<double>& radii, double fit_bound = 0.1, bool probe_x = false,
                              const Vec3& base_x = {}, const Vec3& base_xi = {}, double t = 0.0) {
    OrderProbe out;
    std::vector<double> yxi, yx;
    for (double R : radii) {
        double mxi = 0.0, mx = 0.0;
        for (const auto& d : sphere8()) {
            mxi = std::max(mxi, max_abs(derivative(s, t, base_x, R * d, theta, iota)));
            if (probe_x) mx = std::max(mx, max_abs(derivative(s, t, R * d, base_xi, theta, iota)));
        }
        yxi.push_back(mxi);
        yx.push_back(mx);
    }
    out.xi = loglog_fit(radii, yxi);
    out.xi_ok = out.xi.rms <= fit_bound;
    if (probe_x) {
        out.x = loglog_fit(radii, yx);
        out.x_ok = out.x.rms <= fit_bound;
    }
    return out;
}

// ── commutator equation [h, z] = Z ──────────────────────────────────────────

inline C4 solve_commutator(const PotentialModel& m, double t, const Vec3& x, const Vec3& xi, const C4& Z,
                           double tol = 1e-10, const DiracSet& set = standard_set()) {
    const Vec3 zeta = zeta_at(m, t, x, xi);
    const C4 pp = p_local(set, +1, zeta);
    const C4 pm = p_local(set, -1, zeta);
    const double nz = frob(Z);
    const double np = frob(pp * Z * pp), nm = frob(pm * Z * pm);
    if (np > tol * nz || nm > tol * nz) throw SolvabilityViolation(np, nm);
    return (pp * Z * pm - pm * Z * pp) / (2.0 * jbr(zeta));
}

}  // namespace dsym
