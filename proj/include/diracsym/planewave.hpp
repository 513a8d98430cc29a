#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "dirac_core.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace dsym {

struct PlaneWaveConfig {
    double epsilon0 = 0.1;
    double omega = 1.0;
};

inline double sinc(double k) {
    if (std::abs(k) < 1e-4) {
        const double k2 = k * k;
        return 1.0 - k2 / 6.0 + k2 * k2 / 120.0;
    }
    return std::sin(k) / k;
}

// free symbols for the radiation set
inline C4 h0(const Vec3& xi) { return h_local(radiation_set(), xi); }
inline C4 p_free(int sign, const Vec3& xi) { return p_local(radiation_set(), sign, xi); }
inline double s_comp(int j, const Vec3& xi) { return xi[j - 1] / jbr(xi); }

inline const C4& alpha_rad(int j) { return radiation_set().alpha[j - 1]; }

// K = h0(xi) - eps0 alpha2 sin w x1 - xi1
inline C4 k_symbol(const PlaneWaveConfig& c, double x1, const Vec3& xi) {
    return h0(xi) - (c.epsilon0 * std::sin(c.omega * x1)) * alpha_rad(2) - scalar<4>(xi[0]);
}

// ── X and Z operations ─────────────────────────────────────────────────────

using X1Symbol = std::function<C4(double, const Vec3&)>;

template <class Fn>
C4 x_op(Fn&& c, const PlaneWaveConfig& cfg, double x1, const Vec3& xi) {
    const Vec3 e{cfg.omega, 0.0, 0.0};
    const cplx ep = std::exp(I_unit * (cfg.omega * x1));
    const C4 c0 = c(x1, xi);
    return (c(x1, xi + e) - c0) * ep + (c0 - c(x1, xi - e)) * std::conj(ep);
}

template <class Fn>
C4 z_op(Fn&& c, const PlaneWaveConfig& cfg, double x1, const Vec3& xi) {
    const C4& a2 = alpha_rad(2);
    return (-I_unit * cfg.epsilon0 * std::sin(cfg.omega * x1)) * comm(a2, c(x1, xi)) +
           (0.5 * cfg.epsilon0) * (a2 * x_op(c, cfg, x1, xi));
}

struct PmSplit {
    C4 plus, minus, pm, mp;  // p+ a p+, p- a p-, p+ a p-, p- a p+
};

inline PmSplit split_pm(const C4& a, const Vec3& xi) {
    const C4 pp = p_free(+1, xi), pm = p_free(-1, xi);
    return {pp * a * pp, pm * a * pm, pp * a * pm, pm * a * pp};
}

// ── iteration rounds ───────────────────────────────────────────────────────

using XiSymbol = std::function<C4(const Vec3&)>;

inline void require_commutes(const C4& q, const Vec3& xi, double tol = 1e-10) {
    const double r = max_abs(comm(h0(xi), q));
    if (r > tol * std::max(1.0, max_abs(q)))
        throw CommutationViolation("[h0, q] = " + std::to_string(r) + " does not vanish");
}

struct OffDiagonalPair {
    C4 pm;  // z^{+-} = p+ z p-
    C4 mp;  // z^{-+} = p- z p+
};

// first round: z^{+-} = eps0/(2<xi>) [alpha2^{+-}, q] sin w x1, z^{-+} = -eps0/(2<xi>) [alpha2^{-+}, q] sin w x1
// with sin w x1 factored out (coefficient form)
inline OffDiagonalPair first_correction_coeff(const C4& q, const PlaneWaveConfig& cfg, const Vec3& xi) {
    const C4 pp = p_free(+1, xi), pm = p_free(-1, xi);
    const C4 a2pm = pp * alpha_rad(2) * pm;
    const C4 a2mp = pm * alpha_rad(2) * pp;
    const double f = cfg.epsilon0 / (2.0 * jbr(xi));
    return {f * comm(a2pm, q), -f * comm(a2mp, q)};
}

inline OffDiagonalPair first_correction_z(const XiSymbol& q, const PlaneWaveConfig& cfg, double x1, const Vec3& xi) {
    const C4 qv = q(xi);
    require_commutes(qv, xi);
    const auto c = first_correction_coeff(qv, cfg, xi);
    const double s = std::sin(cfg.omega * x1);
    return {s * c.pm, s * c.mp};
}

// int_0^t e^{i b tau} d tau
inline cplx phase_integral(double b, double t) {
    const double k = 0.5 * b * t;
    return t * std::exp(I_unit * k) * sinc(k);
}

inline double theta_of(const Vec3& xi) { return 0.5 * (1.0 - s_comp(1, xi)); }

// gamma_t = int_0^t e^{i w tau (s1 - 1)} = t e^{-i w theta t} sinc(w theta t)
inline cplx gamma_t(const Vec3& xi, double t, double omega) {
    const double k = omega * theta_of(xi) * t;
    return t * std::exp(-I_unit * k) * sinc(k);
}

inline cplx gamma_t_dt(const Vec3& xi, double t, double omega) {
    return std::exp(I_unit * (omega * t * (s_comp(1, xi) - 1.0)));
}

// Fourier coefficients c_j, |j| <= 3, of an x1-trigonometric polynomial by 8-point DFT
inline std::array<C4, 7> trig_coefficients(const std::function<C4(double)>& f, double omega) {
    constexpr int M = 8;
    std::array<C4, M> v;
    for (int k = 0; k < M; ++k) v[k] = f(2.0 * std::numbers::pi * k / (M * omega));
    std::array<C4, 7> c;
    for (int j = -3; j <= 3; ++j) {
        C4 s;
        for (int k = 0; k < M; ++k) s += std::exp(-I_unit * (2.0 * std::numbers::pi * j * k / M)) * v[k];
        c[j + 3] = s / static_cast<double>(M);
    }
    return c;
}

struct DiagonalPair {
    C4 plus;   // z_t^+
    C4 minus;  // z_t^-
};

// F^+ and F^- of the second round, as functions of x1
inline std::pair<std::function<C4(double)>, std::function<C4(double)>> second_round_sources(
    const C4& q, const PlaneWaveConfig& cfg, const Vec3& xi) {
    const C4 pp = p_free(+1, xi), pm = p_free(-1, xi);
    const auto zc = first_correction_coeff(q, cfg, xi);
    const C4 a1pm = pp * alpha_rad(1) * pm, a1mp = pm * alpha_rad(1) * pp;
    const C4& a2 = alpha_rad(2);
    const double w = cfg.omega, e0 = cfg.epsilon0;
    auto Fp = [=](double x1) {
        const C4 z = std::sin(w * x1) * (zc.pm + zc.mp);
        const C4 dzmp = (w * std::cos(w * x1)) * zc.mp;
        return a1pm * dzmp - (I_unit * e0 * std::sin(w * x1)) * (pp * comm(a2, z) * pp);
    };
    auto Fm = [=](double x1) {
        const C4 z = std::sin(w * x1) * (zc.pm + zc.mp);
        const C4 dzpm = (w * std::cos(w * x1)) * zc.pm;
        return a1mp * dzpm - (I_unit * e0 * std::sin(w * x1)) * (pm * comm(a2, z) * pm);
    };
    return {Fp, Fm};
}

inline DiagonalPair second_correction_z_plusminus(const XiSymbol& q, const PlaneWaveConfig& cfg, double t, double x1,
                                                  const Vec3& xi) {
    const C4 qv = q(xi);
    require_commutes(qv, xi);
    const C4 pp = p_free(+1, xi), pm = p_free(-1, xi);
    // (eps0/2) p (alpha2 X q) p, with q independent of x1
    auto qfun = [&q](double, const Vec3& y) { return q(y); };
    auto [Fp0, Fm0] = second_round_sources(qv, cfg, xi);
    const double e0 = cfg.epsilon0;
    auto Fp = [&, Fp0 = Fp0](double x1v) {
        return Fp0(x1v) + (0.5 * e0) * (pp * (alpha_rad(2) * x_op(qfun, cfg, x1v, xi)) * pp);
    };
    auto Fm = [&, Fm0 = Fm0](double x1v) {
        return Fm0(x1v) + (0.5 * e0) * (pm * (alpha_rad(2) * x_op(qfun, cfg, x1v, xi)) * pm);
    };
    const auto fp = trig_coefficients(Fp, cfg.omega);
    const auto fm = trig_coefficients(Fm, cfg.omega);
    const double s1 = s_comp(1, xi), w = cfg.omega;
    DiagonalPair out;
    for (int j = -3; j <= 3; ++j) {
        const cplx e = std::exp(I_unit * (j * w * x1));
        out.plus += (e * phase_integral(j * w * (s1 - 1.0), t)) * fp[j + 3];
        out.minus += (e * phase_integral(-j * w * (s1 + 1.0), t)) * fm[j + 3];
    }
    return out;
}

// ── D1 Heisenberg symbol and shift ─────────────────────────────────────────

inline C4 d1_heisenberg_symbol(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    const double w = cfg.omega;
    const cplx e = std::exp(I_unit * (w * x1));
    const cplx gp = gamma_t(xi, t, w), gm = gamma_t(-1.0 * xi, t, w);
    const cplx fp = gp * e + std::conj(gp * e);
    const cplx fm = gm * e + std::conj(gm * e);
    const double pref = 0.5 * cfg.epsilon0 * w * s_comp(2, xi);
    return scalar<4>(xi[0]) + pref * (fp * p_free(+1, xi) - fm * p_free(-1, xi));
}

inline C4 d1_heisenberg_symbol_dt(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    const double w = cfg.omega;
    const cplx e = std::exp(I_unit * (w * x1));
    const cplx gp = gamma_t_dt(xi, t, w), gm = gamma_t_dt(-1.0 * xi, t, w);
    const cplx fp = gp * e + std::conj(gp * e);
    const cplx fm = gm * e + std::conj(gm * e);
    const double pref = 0.5 * cfg.epsilon0 * w * s_comp(2, xi);
    return pref * (fp * p_free(+1, xi) - fm * p_free(-1, xi));
}

inline C4 d1_heisenberg_symbol_dx(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    const double w = cfg.omega;
    const cplx e = std::exp(I_unit * (w * x1));
    const cplx gp = gamma_t(xi, t, w), gm = gamma_t(-1.0 * xi, t, w);
    const cplx fp = I_unit * w * (gp * e - std::conj(gp * e));
    const cplx fm = I_unit * w * (gm * e - std::conj(gm * e));
    const double pref = 0.5 * cfg.epsilon0 * w * s_comp(2, xi);
    return pref * (fp * p_free(+1, xi) - fm * p_free(-1, xi));
}

// d_t a - i[h0, a] - (alpha1 - 1) a|x1 - Z(a) for the D1 symbol; optionally only p+Rp+ + p-Rp-
inline C4 d1_evolution_residual(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi,
                                bool commuting_part = true) {
    const C4 a = d1_heisenberg_symbol(cfg, t, x1, xi);
    auto af = [&](double xx, const Vec3& y) { return d1_heisenberg_symbol(cfg, t, xx, y); };
    const C4 R = d1_heisenberg_symbol_dt(cfg, t, x1, xi) - I_unit * comm(h0(xi), a) -
                 (alpha_rad(1) - C4::identity()) * d1_heisenberg_symbol_dx(cfg, t, x1, xi) - z_op(af, cfg, x1, xi);
    if (!commuting_part) return R;
    const auto s = split_pm(R, xi);
    return s.plus + s.minus;
}

inline C4 shift_symbol(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    const double w = cfg.omega, e0 = cfg.epsilon0, s2 = s_comp(2, xi);
    const double thp = theta_of(xi), thm = theta_of(-1.0 * xi);
    const double ep = e0 * w * t * std::cos(w * (x1 - t * thp)) * s2 * sinc(w * thp * t);
    const double em = e0 * w * t * std::cos(w * (x1 - t * thm)) * s2 * sinc(w * thm * t);
    return ep * p_free(+1, xi) - em * p_free(-1, xi);
}

// scalar electron factor of the shift and its collision form
inline double collision_lhs(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    const double w = cfg.omega, th = theta_of(xi);
    return cfg.epsilon0 * w * t * std::cos(w * (x1 - t * th)) * s_comp(2, xi) * sinc(w * th * t);
}

inline double collision_rhs(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    const double w = cfg.omega, th = theta_of(xi);
    return cfg.epsilon0 / (2.0 * th) * s_comp(2, xi) * (std::sin(w * x1) - std::sin(w * (x1 - 2.0 * th * t)));
}

struct ComptonSpeed {
    double two_theta;
    double one_minus_cos;
};

inline ComptonSpeed compton_speed(const Vec3& xi) {
    const double n = norm(xi);
    if (n == 0.0) throw ZeroMomentum("compton_speed needs xi != 0");
    return {1.0 - s_comp(1, xi), 1.0 - xi[0] / n};
}

// ── Fourier symbols ────────────────────────────────────────────────────────

struct FourierSymbol {
    double omega = 1.0;
    std::map<int, XiSymbol> coeffs;

    C4 eval(double x1, const Vec3& xi) const {
        C4 s;
        for (const auto& [n, c] : coeffs) s += std::exp(I_unit * (n * omega * x1)) * c(xi);
        return s;
    }
};

// coefficient n of the adjoint: q_{-n}(xi + n w e1)^*
inline FourierSymbol fourier_adjoint(const FourierSymbol& fs) {
    FourierSymbol out{fs.omega, {}};
    for (const auto& [n, c] : fs.coeffs) {
        const int m = -n;
        const double w = fs.omega;
        out.coeffs[m] = [c, m, w](const Vec3& xi) { return adjoint(c(xi + Vec3{m * w, 0.0, 0.0})); };
    }
    return out;
}

inline FourierSymbol symmetrize(const FourierSymbol& fs) {
    const FourierSymbol adj = fourier_adjoint(fs);
    FourierSymbol out{fs.omega, {}};
    std::map<int, bool> keys;
    for (const auto& kv : fs.coeffs) keys[kv.first] = true;
    for (const auto& kv : adj.coeffs) keys[kv.first] = true;
    for (const auto& [n, _] : keys) {
        auto a = fs.coeffs.count(n) ? fs.coeffs.at(n) : XiSymbol{};
        auto b = adj.coeffs.count(n) ? adj.coeffs.at(n) : XiSymbol{};
        out.coeffs[n] = [a, b](const Vec3& xi) {
            C4 s;
            if (a) s += a(xi);
            if (b) s += b(xi);
            return s * 0.5;
        };
    }
    return out;
}

// Fourier symbol from an x1-trigonometric polynomial of degree <= 3
inline FourierSymbol fourier_from_trig(std::function<C4(double, const Vec3&)> f, double omega) {
    FourierSymbol fs{omega, {}};
    for (int n = -3; n <= 3; ++n)
        fs.coeffs[n] = [f, omega, n](const Vec3& xi) {
            return trig_coefficients([&](double x) { return f(x, xi); }, omega)[n + 3];
        };
    return fs;
}

struct MomentumComponent {
    double shift;
    int n;
    XiSymbol coeff;
};

// translation components n w (with a nonzero coefficient on the probe set)
inline std::vector<MomentumComponent> momentum_representation(const FourierSymbol& fs, const std::vector<Vec3>& probes,
                                                              double zero_tol = 1e-12) {
    std::vector<MomentumComponent> out;
    for (const auto& [n, c] : fs.coeffs) {
        double m = 0.0;
        for (const auto& xi : probes) m = std::max(m, max_abs(c(xi)));
        if (m > zero_tol) out.push_back({n * fs.omega, n, c});
    }
    return out;
}

// ── translation conjugation on a periodic x1 grid ──────────────────────────

struct SpectralGrid {
    explicit SpectralGrid(int n) : n_(n) {
        if (n < 8 || (n & (n - 1)) != 0) throw GridError("grid size must be a power of two >= 8");
        in_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        out_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        fwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~SpectralGrid() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(in_);
        fftw_free(out_);
    }
    SpectralGrid(const SpectralGrid&) = delete;
    SpectralGrid& operator=(const SpectralGrid&) = delete;

    int size() const { return n_; }

    std::vector<cplx> forward(const std::vector<cplx>& v) { return run(fwd_, v, 1.0); }
    std::vector<cplx> backward(const std::vector<cplx>& v) { return run(bwd_, v, 1.0 / n_); }

    // signed mode index of slot k
    int mode(int k) const { return k <= n_ / 2 ? k : k - n_; }

private:
    std::vector<cplx> run(fftw_plan p, const std::vector<cplx>& v, double scale) {
        for (int k = 0; k < n_; ++k) in_[k][0] = v[k].real(), in_[k][1] = v[k].imag();
        fftw_execute(p);
        std::vector<cplx> r(static_cast<std::size_t>(n_));
        for (int k = 0; k < n_; ++k) r[k] = scale * cplx(out_[k][0], out_[k][1]);
        return r;
    }
    int n_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan fwd_, bwd_;
};

using Spinor4Field = std::array<std::vector<cplx>, 4>;

// spectral multiplier applied to each component: f_hat(k) -> mult(k) f_hat(k), k = mode * omega
template <class M>
Spinor4Field spectral_apply(SpectralGrid& g, const Spinor4Field& f, double omega, M&& mult) {
    Spinor4Field r;
    for (int c = 0; c < 4; ++c) {
        auto F = g.forward(f[c]);
        for (int k = 0; k < g.size(); ++k) {
            const int m = g.mode(k);
            F[k] = (std::abs(m) == g.size() / 2) ? cplx{} : mult(m * omega) * F[k];
        }
        r[c] = g.backward(F);
    }
    return r;
}

// H(t) psi with D1 spectral and (xi2, xi3) fixed
inline Spinor4Field apply_h_t(SpectralGrid& g, const Spinor4Field& psi, const PlaneWaveConfig& cfg, double t, double xi2,
                              double xi3) {
    const int n = g.size();
    const double L = 2.0 * std::numbers::pi / cfg.omega;
    const auto D1 = spectral_apply(g, psi, cfg.omega, [](double k) { return cplx(k, 0.0); });
    Spinor4Field out;
    for (auto& v : out) v.assign(static_cast<std::size_t>(n), cplx{});
    for (int j = 0; j < n; ++j) {
        const double x = L * j / n;
        const double A2 = cfg.epsilon0 * std::sin(cfg.omega * (x - t));
        const std::array<cplx, 4> p{psi[0][j], psi[1][j], psi[2][j], psi[3][j]};
        const std::array<cplx, 4> d{D1[0][j], D1[1][j], D1[2][j], D1[3][j]};
        const C4 M = (xi2 - A2) * alpha_rad(2) + xi3 * alpha_rad(3) + radiation_set().beta;
        for (int r = 0; r < 4; ++r) {
            cplx s{};
            for (int c = 0; c < 4; ++c) s += alpha_rad(1)(r, c) * d[c] + M(r, c) * p[c];
            out[r][j] = s;
        }
    }
    return out;
}

// max |T_{-t} H(0) T_t psi - H(t) psi| for a seeded band-limited psi
inline double translation_conjugation_residual(const PlaneWaveConfig& cfg, double t, int grid_size, double xi2 = 0.4,
                                               double xi3 = -0.7, std::uint64_t seed = 7) {
    SpectralGrid g(grid_size);
    const int n = grid_size;
    CounterRng rng(seed, 0x7A);
    Spinor4Field psi;
    for (int c = 0; c < 4; ++c) {
        std::vector<cplx> hat(static_cast<std::size_t>(n), cplx{});
        for (int k = 0; k < n; ++k) {
            const int m = g.mode(k);
            if (std::abs(m) <= n / 8) hat[k] = cplx(rng.normal(), rng.normal()) / (1.0 + m * m);
        }
        psi[c] = g.backward(hat);
    }
    auto shift = [&](const Spinor4Field& f, double s) {
        return spectral_apply(g, f, cfg.omega, [s](double k) { return std::exp(I_unit * (k * s)); });
    };
    const auto lhs = shift(apply_h_t(g, shift(psi, t), cfg, 0.0, xi2, xi3), -t);
    const auto rhs = apply_h_t(g, psi, cfg, t, xi2, xi3);
    double r = 0.0;
    for (int c = 0; c < 4; ++c)
        for (int j = 0; j < n; ++j) r = std::max(r, std::abs(lhs[c][j] - rhs[c][j]));
    return r;
}

}  // namespace dsym
