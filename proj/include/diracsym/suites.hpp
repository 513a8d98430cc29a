#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "classical_flow.hpp"
#include "dirac_core.hpp"
#include "fields.hpp"
#include "planewave.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "spectral_k.hpp"
#include "spin_transport.hpp"
#include "symbol_calculus.hpp"

namespace dsym {

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0.0;
    double time_budget = 0.0;  // seconds, 0 = none
    double tol_scale = 1.0;

    // value <= bound (scaled); NaN fails
    void le(const std::string& n, double value, double bound) {
        const double b = bound * tol_scale;
        checks.push_back({n, value, b, std::isfinite(value) && value <= b});
    }
    // value >= bound
    void ge(const std::string& n, double value, double bound) {
        checks.push_back({n, value, bound, std::isfinite(value) && value >= bound});
    }
    void truth(const std::string& n, bool ok) { checks.push_back({n, ok ? 0.0 : 1.0, 0.0, ok}); }

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    bool within_budget() const { return time_budget <= 0.0 || seconds <= time_budget; }
};

struct SuiteOptions {
    std::uint64_t seed = 20241015;
    double tol_scale = 1.0;

    int algebra_points = 100;

    SmoothedCoulomb coulomb{};  // c_f = 1/137, r0 = 0.1
    double flow_t = 20.0;
    std::size_t flow_samples = 2001;
    double flow_tol = 1e-10;
    int inversion_points = 5;
    double inversion_t = 5.0;

    SmoothedCoulomb strong_coulomb{0.3, 0.5};
    UniformB uniform_b{{0.3, -0.2, 0.5}};
    int theta_points = 50;

    double kappa_t = 10.0;
    int kappa_orbits = 4;
    int consistency_points = 20;

    PlaneWaveConfig planewave{0.3, 1.0};
    int factorization_grid = 256;
    int factorization_triples = 5;

    double d1_xi_min = 5.0;
    double d1_xi_max = 200.0;
    int d1_radii = 12;

    PlaneWaveConfig spectral{0.5, 1.0};
    double proj_xi_min = 1.0;
    double proj_xi_max = 1e4;
    int proj_radii = 17;
};

namespace oracle {

// characteristic polynomial coefficients c0..c3 of det(lambda - A) = lambda^4 + c3 lambda^3 + ... (Faddeev-LeVerrier)
inline std::array<cplx, 4> charpoly4(const C4& A) {
    std::array<cplx, 5> c{};
    c[4] = 1.0;
    C4 M;
    for (int k = 1; k <= 4; ++k) {
        M = A * M + c[5 - k] * C4::identity();
        c[4 - k] = -trace(A * M) / static_cast<double>(k);
    }
    return {c[0], c[1], c[2], c[3]};
}

// coefficients of (lambda - a)^2 (lambda - b)^2
inline std::array<double, 4> double_root_poly(double a, double b) {
    const double s = a + b, p = a * b;
    return {p * p, -2.0 * p * s, s * s + 2.0 * p, -2.0 * s};
}

}  // namespace oracle

namespace detail {

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline Suite make_suite(const std::string& name, const SuiteOptions& o, double budget) {
    Suite s;
    s.name = name;
    s.tol_scale = o.tol_scale;
    s.time_budget = budget;
    return s;
}

inline std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return r;
}

inline C4 random_c4(CounterRng& rng) {
    C4 m;
    for (auto& e : m.a) e = cplx(rng.normal(), rng.normal());
    return m;
}

}  // namespace detail

// ── 1: Dirac algebra ────────────────────────────────────────────────────────

inline Suite algebra_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("algebra", o, 1.0);
    const DiracSet& S = standard_set();
    const DiracSet& R = radiation_set();
    s.le("clifford_standard", clifford_residual(S), 0.0);
    s.le("clifford_radiation", clifford_residual(R), 0.0);

    CounterRng rng(o.seed, 1);
    const std::array<PotentialModel, 3> models{PotentialModel{o.strong_coulomb}, PotentialModel{o.uniform_b},
                                               PotentialModel{PlaneWave{o.planewave.epsilon0, o.planewave.omega}}};
    double h2 = 0, hsa = 0, cp = 0, pid = 0, psa = 0, ptr = 0, psum = 0, porth = 0, peig = 0, comp = 0;
    double lem = 0, uni = 0, diag = 0, ceig = 0, corth = 0, clen = 0, span = 0, recon = 0, pauli_id = 0, gw = 0;
    for (int n = 0; n < o.algebra_points; ++n) {
        const PotentialModel& m = models[static_cast<std::size_t>(n % 3)];
        const double t = rng.uniform(0.0, 3.0);
        const Vec3 x = rng.normal3(1.0), xi = rng.normal3(2.0);
        const Vec3 z = zeta_at(m, t, x, xi);
        const double V = potential_V(m, t, x), b = jbr(z);
        const C4 h = symbol_h(S, m, t, x, xi);
        const C4 I4 = C4::identity();
        const C4 hv = h - scalar<4>(V);
        h2 = std::max(h2, max_abs(hv * hv - (b * b) * I4));
        hsa = std::max(hsa, max_abs(h - adjoint(h)));

        const auto l = eigen_lambda(m, t, x, xi);
        const auto c = oracle::charpoly4(h);
        const auto e = oracle::double_root_poly(l.plus, l.minus);
        for (int k = 0; k < 4; ++k) cp = std::max(cp, std::abs(c[k] - e[k]) / (1.0 + std::abs(e[k])));

        const C4 pp = projection_p(S, +1, m, t, x, xi), pm = projection_p(S, -1, m, t, x, xi);
        for (const C4* p : {&pp, &pm}) {
            pid = std::max(pid, max_abs(*p * *p - *p));
            psa = std::max(psa, max_abs(*p - adjoint(*p)));
            ptr = std::max(ptr, std::abs(trace(*p) - 2.0));
        }
        psum = std::max(psum, max_abs(pp + pm - I4));
        porth = std::max(porth, max_abs(pp * pm));
        peig = std::max(peig, std::max(max_abs(h * pp - l.plus * pp), max_abs(h * pm - l.minus * pm)));
        comp = std::max(comp, max_abs(l.plus * pp + l.minus * pm - h));

        // (2.10) at V = A = 0 for both sets
        for (const DiracSet* D : {&S, &R})
            for (int sg : {+1, -1}) {
                const C4 p = p_local(*D, sg, xi);
                const double bx = jbr(xi);
                for (int j = 0; j < 3; ++j)
                    lem = std::max(lem, max_abs(p * D->alpha[j] * p - (sg * xi[j] / bx) * p));
                lem = std::max(lem, max_abs(p * D->beta * p - (sg / bx) * p));
            }

        const C4 U = diagonalizer_upsilon(m, t, x, xi);
        uni = std::max(uni, max_abs(adjoint(U) * U - I4));
        diag = std::max(diag, max_abs(adjoint(U) * h * U - (scalar<4>(V) + b * S.beta)));
        for (int sg : {+1, -1}) {
            const C42 Y = eigencolumns(sg, m, t, x, xi);
            const double lam = sg > 0 ? l.plus : l.minus;
            ceig = std::max(ceig, max_abs(h * Y - lam * Y));
            const C2 G = adjoint(Y) * Y;
            const double len = 2.0 * (1.0 + 1.0 / b);
            clen = std::max(clen, std::max(std::abs(G(0, 0) - len), std::abs(G(1, 1) - len)));
            corth = std::max(corth, std::abs(G(0, 1)));
            const C4 proj = Y * inverse(G) * adjoint(Y);
            span = std::max(span, max_abs(proj - (sg > 0 ? pp : pm)));
            const C4 q = detail::random_c4(rng);
            const C4 p = sg > 0 ? pp : pm;
            recon = std::max(recon, max_abs(reconstruct_from_kappa(restrict_to_eigenspace(q, sg, m, t, x, xi), sg, z) -
                                            p * q * p));
        }

        const Vec3 u = rng.normal3(), v = rng.normal3();
        pauli_id = std::max(pauli_id, max_abs(sigma_dot(u) * sigma_dot(v) -
                                              (scalar<2>(dot(u, v)) + I_unit * sigma_dot(cross(u, v)))));
        C2 a;
        for (auto& en : a.a) en = cplx(rng.normal(), rng.normal());
        const C2 herm = a + adjoint(a);
        const GWDecomp d = gw_decompose(herm);
        gw = std::max(gw, std::max(max_abs(gw_compose(d) - herm), gw_imag_max(d)));
        gw = std::max(gw, max_abs(gw_compose(gw_decompose(a)) - a));
    }
    s.le("h_square_identity", h2, 1e-11);
    s.le("h_self_adjoint", hsa, 1e-11);
    s.le("charpoly_double_roots", cp, 1e-11);
    s.le("projection_idempotent", pid, 1e-11);
    s.le("projection_self_adjoint", psa, 1e-11);
    s.le("projection_trace", ptr, 1e-11);
    s.le("projection_sum", psum, 1e-11);
    s.le("projection_orthogonal", porth, 1e-11);
    s.le("projection_eigen", peig, 1e-11);
    s.le("spectral_completeness", comp, 1e-11);
    s.le("p_alpha_p_identity", lem, 1e-11);
    s.le("upsilon_unitary", uni, 1e-11);
    s.le("upsilon_diagonalizes", diag, 1e-11);
    s.le("eigencolumns_eigen", ceig, 1e-11);
    s.le("eigencolumns_length", clen, 1e-11);
    s.le("eigencolumns_orthogonal", corth, 1e-11);
    s.le("eigencolumns_span", span, 1e-11);
    s.le("restriction_reconstruction", recon, 1e-11);
    s.le("pauli_product_identity", pauli_id, 1e-11);
    s.le("gw_round_trip", gw, 1e-11);
    s.seconds = sw.seconds();
    return s;
}

// ── 2: classical flow ───────────────────────────────────────────────────────

inline double lambda_drift(const PotentialModel& m, const Trajectory& tr) {
    const double l0 = lambda_sign(tr.sign, m, tr.t.front(), tr.samples.front().x, tr.samples.front().xi);
    double d = 0.0;
    for (std::size_t i = 0; i < tr.samples.size(); ++i)
        d = std::max(d, std::abs(lambda_sign(tr.sign, m, tr.t[i], tr.samples[i].x, tr.samples[i].xi) - l0));
    return d;
}

inline Suite flow_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("flow", o, 10.0);
    CounterRng rng(o.seed, 2);

    double zf = 0.0;
    const PotentialModel zero = ZeroField{};
    for (int n = 0; n < 5; ++n) {
        const PhasePoint p0{rng.normal3(), rng.normal3(2.0)};
        const int sg = (n % 2 == 0) ? 1 : -1;
        const auto tr = integrate_flow(sg, zero, p0, 10.0, o.flow_tol, 11);
        for (std::size_t i = 0; i < tr.samples.size(); ++i) {
            const Vec3 x = p0.x + (sg * tr.t[i] / jbr(p0.xi)) * p0.xi;
            zf = std::max(zf, std::max(norm(tr.samples[i].x - x), norm(tr.samples[i].xi - p0.xi)));
        }
    }
    s.le("zero_field_exact", zf, 1e-10);

    const PotentialModel cm = o.coulomb;
    const PhasePoint pc{{2.0, 0.0, 0.0}, {0.0, 0.3, 0.0}};
    double drift = 0.0, lor = 0.0;
    for (int sg : {+1, -1}) {
        const auto tr = integrate_flow(sg, cm, pc, o.flow_t, o.flow_tol, o.flow_samples);
        drift = std::max(drift, lambda_drift(cm, tr));
        lor = std::max(lor, lorentz_residual(sg, cm, tr));
    }
    s.le("coulomb_lambda_drift", drift, 1e-8);
    s.le("lorentz_residual", lor, 1e-5);

    const PotentialModel strong = o.strong_coulomb;
    const auto trs = integrate_flow(+1, strong, pc, o.flow_t, o.flow_tol, o.flow_samples);
    s.le("strong_coulomb_lambda_drift", lambda_drift(strong, trs), 1e-8);
    s.le("strong_coulomb_lorentz_residual", lorentz_residual(+1, strong, trs), 1e-5);

    const PotentialModel ub = o.uniform_b;
    const auto tb = integrate_flow(+1, ub, {{0.2, -0.1, 0.3}, {0.5, 0.1, -0.4}}, o.flow_t, o.flow_tol, 201);
    double v0 = norm(hamilton_rhs(+1, ub, 0.0, tb.samples.front()).dx), dv = 0.0;
    for (std::size_t i = 0; i < tb.samples.size(); ++i)
        dv = std::max(dv, std::abs(norm(hamilton_rhs(+1, ub, tb.t[i], tb.samples[i]).dx) - v0));
    s.le("uniform_b_speed_constant", dv, 1e-8);

    double inv = 0.0;
    for (int n = 0; n < o.inversion_points; ++n) {
        const PhasePoint p0{rng.normal3(), rng.normal3()};
        for (int sg : {+1, -1}) {
            const PhasePoint e = flow_map(sg, strong, p0, o.inversion_t, o.flow_tol);
            const PhasePoint b = flow_map(sg, strong, e, -o.inversion_t, o.flow_tol, o.inversion_t);
            inv = std::max(inv, std::max(norm(b.x - p0.x), norm(b.xi - p0.xi)));
        }
    }
    s.le("flow_inversion", inv, 1e-7);
    s.seconds = sw.seconds();
    return s;
}

// ── 3: Theta oracle ─────────────────────────────────────────────────────────

inline Suite theta_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("theta_oracle", o, 30.0);
    CounterRng rng(o.seed, 3);
    const std::array<PotentialModel, 2> models{PotentialModel{o.strong_coulomb}, PotentialModel{o.uniform_b}};
    double err = 0.0, errm = 0.0, adj = 0.0, fmax = 0.0;
    for (int n = 0; n < o.theta_points; ++n) {
        const PotentialModel& m = models[static_cast<std::size_t>(n % 2)];
        const PhasePoint p{rng.normal3(), rng.normal3()};
        const C2 th = theta_numeric(+1, m, 0.0, p);
        const Vec3 F = field_F(m, 0.0, p.x, p.xi);
        fmax = std::max(fmax, norm(F));
        err = std::max(err, max_abs(traceless(th) - theta_from_field(F)));
        const C2 thm = theta_numeric(-1, m, 0.0, p);
        errm = std::max(errm, max_abs(traceless(thm) - theta_from_field(field_F_signed(-1, m, 0.0, p.x, p.xi))));
        if (n < 10) adj = std::max(adj, max_abs(traceless(th) - traceless(theta_numeric_adjoint_path(+1, m, 0.0, p))));
    }
    s.le("theta_vs_field_F", err, 1e-5);
    s.le("theta_minus_vs_signed_field", errm, 1e-5);
    s.le("theta_adjoint_path", adj, 1e-6);
    s.ge("field_F_nontrivial", fmax, 1e-2);
    double zf = 0.0;
    for (int n = 0; n < 3; ++n)
        zf = std::max(zf, max_abs(traceless(theta_numeric(+1, ZeroField{}, 0.0, {rng.normal3(), rng.normal3()}))));
    s.le("theta_zero_field", zf, 1e-10);
    s.seconds = sw.seconds();
    return s;
}

// ── 4: kappa transport ──────────────────────────────────────────────────────

inline double consistency_local(int sign, const Vec3& z, const Vec3& E, const Vec3& B, CounterRng& rng) {
    const Vec3 v = (static_cast<double>(sign) / jbr(z)) * z;
    const Vec3 F = field_F_signed_local(sign, z, E, B);
    const Vec3 Bt = b_tilde(E, B, v);
    double r = 0.0;
    for (int k = 0; k < 4; ++k) {
        const Vec3 kap = rng.normal3();
        r = std::max(r, norm(cross(F, kap) - (sign * std::sqrt(1.0 - norm2(v))) * cross(kap, Bt)));
    }
    return r;
}

inline Suite kappa_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("kappa_transport", o, 0.0);
    CounterRng rng(o.seed, 4);
    const PotentialModel strong = o.strong_coulomb;
    const PotentialModel ub = o.uniform_b;

    double nd = 0.0;
    for (int n = 0; n < o.kappa_orbits; ++n) {
        const PotentialModel& m = (n % 2 == 0) ? strong : ub;
        const int sg = (n / 2 % 2 == 0) ? 1 : -1;
        const PhasePoint p0{rng.normal3(), rng.normal3(0.5)};
        const Vec3 k0 = rng.normal3();
        const auto tr = integrate_kappa_trace(sg, m, p0, {k0, 0.3}, o.kappa_t, 1e-10, 101);
        for (const auto& smp : tr.samples) nd = std::max(nd, std::abs(norm(smp.kappa) - norm(k0)));
    }
    s.le("kappa_norm_conservation", nd, 1e-7);

    const double bz = 0.7;
    const Vec3 F = field_F_local({}, {}, {0.0, 0.0, bz});
    const Vec3 k0{0.3, -0.8, 0.5};
    const Vec3 k1 = integrate_kappa_frozen(F, k0, 2.0 * std::numbers::pi / bz, 1e-12);
    s.le("frozen_rotation_period", norm(k1 - k0), 1e-7);
    const Vec3 kq = integrate_kappa_frozen(F, k0, 0.5 * std::numbers::pi / bz, 1e-12);
    const Vec3 kq_exact{k0[1], -k0[0], k0[2]};  // quarter turn of kappa x B about e3
    s.le("frozen_rotation_quarter", norm(kq - kq_exact), 1e-7);

    const PotentialModel zero = ZeroField{};
    const auto tz = integrate_kappa_trace(+1, zero, {{0, 0, 0}, {0.4, 0.1, 0}}, {k0, 0.0}, 5.0, 1e-10, 5);
    s.le("kappa_zero_field_constant", norm(tz.final_state.vec - k0), 1e-10);

    double c0 = 0.0, cb = 0.0, cf = 0.0;
    for (int n = 0; n < o.consistency_points; ++n) {
        const Vec3 E = rng.normal3(0.5), B = rng.normal3(0.5), z = rng.normal3();
        for (int sg : {+1, -1}) {
            c0 = std::max(c0, consistency_local(sg, {}, E, B, rng));
            cb = std::max(cb, consistency_local(sg, z, E, {}, rng));
            cf = std::max(cf, consistency_local(sg, z, E, B, rng));
        }
    }
    s.le("consistency_zeta_zero", c0, 1e-9);
    s.le("consistency_B_zero", cb, 1e-9);
    s.le("consistency_full_fields", cf, 1e-9);
    s.seconds = sw.seconds();
    return s;
}

// ── 5: spin vectors ─────────────────────────────────────────────────────────

inline Suite spin_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("spin_vectors", o, 0.0);
    CounterRng rng(o.seed, 5);
    double rest = 0.0;
    for (int j = 1; j <= 3; ++j) {
        rest = std::max(rest, norm(spin_kappa_vector(j, {}) - 0.5 * Vec3::unit(j - 1)));
        rest = std::max(rest, max_abs(spin_kappa_matrix(j, {}) - 0.5 * pauli(j)));
    }
    s.le("rest_frame_unit_vectors", rest, 0.0);

    double par = 0.0, perp = 0.0, split = 0.0, sym = 0.0;
    for (int n = 0; n < 20; ++n) {
        const Vec3 dir = rng.normal3();
        const Vec3 nrm = dir / norm(dir);
        for (double sp : {0.05, 0.3, 0.6, 0.8, 0.95, 0.999}) {
            const Vec3 v = sp * nrm;
            const double g = std::sqrt(1.0 - sp * sp);
            for (int j = 1; j <= 3; ++j) {
                const Vec3 e = Vec3::unit(j - 1);
                const Vec3 k = spin_kappa_vector(j, v);
                par = std::max(par, std::abs(dot(k, nrm) - 0.5 * dot(e, nrm)));
                const Vec3 kp = k - dot(k, nrm) * nrm, ep = e - dot(e, nrm) * nrm;
                perp = std::max(perp, norm(kp - (0.5 * g) * ep));
                split = std::max(split, norm(k - spin_kappa_vector_split(j, v)));
                for (int l = 1; l <= 3; ++l) sym = std::max(sym, std::abs(k[l - 1] - spin_kappa_vector(l, v)[j - 1]));
            }
        }
    }
    s.le("parallel_component_half", par, 1e-12);
    s.le("perpendicular_shortening", perp, 1e-12);
    s.le("split_form_match", split, 1e-12);
    s.le("kappa_vector_symmetric", sym, 1e-15);
    s.le("example_v08_j2", norm(spin_kappa_vector(2, {0.8, 0, 0}) - Vec3{0, 0.3, 0}), 1e-15);

    double restr = 0.0, cmt = 0.0;
    const std::array<PotentialModel, 2> models{PotentialModel{o.strong_coulomb}, PotentialModel{o.uniform_b}};
    for (int n = 0; n < 20; ++n) {
        const PotentialModel& m = models[static_cast<std::size_t>(n % 2)];
        const Vec3 x = rng.normal3(), xi = rng.normal3(1.5);
        const Vec3 z = zeta_at(m, 0.0, x, xi);
        const C4 h = symbol_h(standard_set(), m, 0.0, x, xi);
        for (int j = 1; j <= 3; ++j) {
            const C4 Sc = spin_corrected_symbol(m, 0.0, x, xi, j);
            cmt = std::max(cmt, max_abs(comm(h, Sc)));
            for (int sg : {+1, -1}) {
                const Vec3 v = (static_cast<double>(sg) / jbr(z)) * z;
                restr = std::max(restr, max_abs(restrict_to_eigenspace(Sc, sg, m, 0.0, x, xi) - spin_kappa_matrix(j, v)));
                restr = std::max(restr,
                                 max_abs(restrict_to_eigenspace(spin_matrix(j), sg, m, 0.0, x, xi) - spin_kappa_matrix(j, v)));
            }
        }
    }
    s.le("restriction_oracle", restr, 1e-10);
    s.le("corrected_spin_commutes", cmt, 1e-11);
    s.seconds = sw.seconds();
    return s;
}

// ── 6: plane-wave factorization ─────────────────────────────────────────────

inline Suite factorization_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("factorization", o, 0.0);
    CounterRng rng(o.seed, 6);
    double r = 0.0;
    for (int n = 0; n < o.factorization_triples; ++n) {
        const double t = rng.uniform(0.0, 5.0), e0 = rng.uniform(0.05, 0.5), w = rng.uniform(0.5, 2.0);
        r = std::max(r, translation_conjugation_residual({e0, w}, t, o.factorization_grid, rng.uniform(-1, 1),
                                                         rng.uniform(-1, 1), o.seed + static_cast<std::uint64_t>(n)));
    }
    s.le("translation_conjugation", r, 1e-10);
    s.le("free_translation_invariance", translation_conjugation_residual({0.0, 1.0}, 0.9, o.factorization_grid), 1e-12);
    const double w = o.planewave.omega;
    s.le("full_period_translation",
         translation_conjugation_residual(o.planewave, 2.0 * std::numbers::pi / w, o.factorization_grid), 1e-12);
    s.seconds = sw.seconds();
    return s;
}

// ── 7: gamma_t and the collision identity ──────────────────────────────────

inline Suite gamma_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("gamma", o, 0.0);
    CounterRng rng(o.seed, 7);
    std::vector<Vec3> xis;
    for (int n = 0; n < 10; ++n) xis.push_back(rng.normal3(std::pow(10.0, (n % 4) - 1.0)));
    const auto ts = linspace(0.0, 10.0, 10);
    const std::array<double, 5> ws{0.5, 1.0, 1.5, 2.0, 3.0};
    double g = 0.0;
    for (const auto& xi : xis)
        for (double t : ts)
            for (double w : ws) {
                const double b = w * (s_comp(1, xi) - 1.0);
                const cplx q = quad::complex_gk([&](double tau) { return std::exp(I_unit * (b * tau)); }, 0.0, t);
                g = std::max(g, std::abs(q - gamma_t(xi, t, w)));
            }
    s.le("gamma_closed_vs_quadrature", g, 1e-9);

    double col = 0.0;
    int used = 0;
    while (used < 200) {
        const Vec3 xi = rng.normal3(3.0);
        if (theta_of(xi) < 0.05) continue;
        ++used;
        const double t = rng.uniform(0.0, 10.0), x1 = rng.uniform(-5.0, 5.0);
        col = std::max(col, std::abs(collision_lhs(o.planewave, t, x1, xi) - collision_rhs(o.planewave, t, x1, xi)));
    }
    s.le("collision_identity", col, 1e-10);

    s.le("gamma_zero_time", std::abs(gamma_t({1, 2, 3}, 0.0, 1.0)), 0.0);
    s.le("gamma_full_period", std::abs(gamma_t({0, 1, 0}, 2.0 * std::numbers::pi, 1.0)), 1e-12);
    s.seconds = sw.seconds();
    return s;
}

// ── 8: D2/D3 invariance and the D1 symbol ──────────────────────────────────

inline C4 d1_commuting_residual_weighted(const PlaneWaveConfig& cfg, double t, double x1, const Vec3& xi) {
    return jbr(xi) * d1_evolution_residual(cfg, t, x1, xi, true);
}

struct D1Decay {
    std::vector<double> radii;
    std::vector<double> weighted;
    SlopeFit fit;
};

inline D1Decay d1_residual_decay(const PlaneWaveConfig& cfg, const std::vector<double>& radii) {
    D1Decay out{radii, {}, {}};
    const std::array<double, 2> ts{0.6, 1.7};
    const std::array<double, 2> xs{0.3, 2.1};
    for (double R : radii) {
        double m = 0.0;
        for (const auto& d : sphere8())
            for (double t : ts)
                for (double x1 : xs) m = std::max(m, max_abs(d1_commuting_residual_weighted(cfg, t, x1, R * d)));
        out.weighted.push_back(m);
    }
    out.fit = loglog_fit(out.radii, out.weighted);
    return out;
}

inline Suite d1_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("d1_symbol", o, 0.0);
    CounterRng rng(o.seed, 8);
    const PlaneWaveConfig& cfg = o.planewave;
    double d23 = 0.0, sa = 0.0, t0 = 0.0, cons = 0.0, shift = 0.0;
    for (int n = 0; n < 30; ++n) {
        const Vec3 xi = rng.normal3(3.0);
        const double t = rng.uniform(0.1, 8.0), x1 = rng.uniform(-4.0, 4.0);
        for (int j : {2, 3}) {
            const auto z = second_correction_z_plusminus([j](const Vec3& y) { return scalar<4>(y[j - 1]); }, cfg, t, x1, xi);
            d23 = std::max(d23, std::max(max_abs(z.plus), max_abs(z.minus)));
        }
        const C4 a = d1_heisenberg_symbol(cfg, t, x1, xi);
        sa = std::max(sa, max_abs(a - adjoint(a)));
        t0 = std::max(t0, max_abs(d1_heisenberg_symbol(cfg, 0.0, x1, xi) - scalar<4>(xi[0])));
        const auto z1 = second_correction_z_plusminus([](const Vec3& y) { return scalar<4>(y[0]); }, cfg, t, x1, xi);
        cons = std::max(cons, max_abs(z1.plus + z1.minus + scalar<4>(xi[0]) - a));
        shift = std::max(shift, max_abs(shift_symbol(cfg, t, x1, xi) - (a - scalar<4>(xi[0]))));
    }
    s.le("d2_d3_invariant", d23, 1e-10);
    s.le("d1_self_adjoint", sa, 1e-12);
    s.le("d1_initial_exact", t0, 0.0);
    s.le("d1_two_round_consistency", cons, 1e-10);
    s.le("shift_symbol_identity", shift, 1e-10);

    const auto dec = d1_residual_decay(cfg, detail::logspace(o.d1_xi_min, o.d1_xi_max, o.d1_radii));
    s.le("d1_residual_weighted_slope", dec.fit.slope, 0.05);
    s.seconds = sw.seconds();
    return s;
}

// ── 9: momentum ladder ──────────────────────────────────────────────────────

inline std::set<int> ladder_shifts(const FourierSymbol& fs, const std::vector<Vec3>& probes) {
    std::set<int> out;
    for (const auto& c : momentum_representation(fs, probes)) out.insert(c.n);
    return out;
}

inline std::string format_shifts(const std::set<int>& s) {
    std::string r = "{";
    bool first = true;
    for (int n : s) {
        if (!first) r += ";";
        r += std::to_string(n);
        first = false;
    }
    return r + "}";
}

inline FourierSymbol d1_fourier(const PlaneWaveConfig& cfg, double t) {
    return fourier_from_trig([cfg, t](double x1, const Vec3& xi) { return d1_heisenberg_symbol(cfg, t, x1, xi); },
                             cfg.omega);
}

// p+ S3 p+ + p- S3 p- with free projections
inline C4 free_corrected_spin(const Vec3& xi) {
    const C4 pp = p_free(+1, xi), pm = p_free(-1, xi);
    return pp * spin_matrix(3) * pp + pm * spin_matrix(3) * pm;
}

// z_t^+ + z_t^- of the second round for the corrected spin
inline FourierSymbol second_round_fourier(const PlaneWaveConfig& cfg, double t) {
    return fourier_from_trig(
        [cfg, t](double x1, const Vec3& xi) {
            const auto z = second_correction_z_plusminus(free_corrected_spin, cfg, t, x1, xi);
            return z.plus + z.minus;
        },
        cfg.omega);
}

inline Suite ladder_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("momentum_ladder", o, 0.0);
    const std::vector<Vec3> probes{{0.7, 1.3, -0.4}, {-2.0, 0.5, 1.1}, {3.0, -1.2, 0.2}};
    const auto d1 = ladder_shifts(d1_fourier(o.planewave, 1.3), probes);
    s.truth("d1_shifts_single_photon " + format_shifts(d1), d1 == std::set<int>{-1, 0, 1});
    const auto d1z = ladder_shifts(d1_fourier({0.0, o.planewave.omega}, 1.3), probes);
    s.truth("free_shifts_identity " + format_shifts(d1z), d1z == std::set<int>{0});
    const auto r2 = ladder_shifts(second_round_fourier(o.planewave, 1.3), probes);
    bool within = !r2.empty();
    for (int n : r2) within = within && std::abs(n) <= 2;
    s.truth("second_round_within_two " + format_shifts(r2), within);
    const auto r2fs = second_round_fourier(o.planewave, 1.3);
    double pm2 = 0.0;
    for (int n : {-2, 2})
        for (const auto& xi : probes) pm2 = std::max(pm2, max_abs(r2fs.coeffs.at(n)(xi)));
    s.le("second_round_two_photon_coefficients", pm2, 1e-12);
    s.seconds = sw.seconds();
    return s;
}

// ── 10: spectral suite ─────────────────────────────────────────────────────

inline DecaySweep proj_decay(int sign, const SuiteOptions& o, const Vec3& dir,
                             const std::vector<std::pair<double, double>>& xy) {
    return proj_vs_free_residual(sign, o.spectral, dir, detail::logspace(o.proj_xi_min, o.proj_xi_max, o.proj_radii),
                                 xy);
}

inline const std::array<Vec3, 4>& proj_directions() {
    static const std::array<Vec3, 4> d{Vec3{1.0, 0.5, -0.3}, Vec3{-1.0, 0.4, 0.2}, Vec3{0.2, 1.0, 0.1},
                                       Vec3{0.3, -0.6, 1.0}};
    return d;
}

inline Suite spectral_suite(const SuiteOptions& o) {
    detail::Stopwatch sw;
    Suite s = detail::make_suite("spectral", o, 60.0);
    CounterRng rng(o.seed, 10);
    const PlaneWaveConfig cfg = o.spectral;

    double pq = 0.0, rq = 0.0, cd = 0.0, blk = 0.0, coin = 0.0, lead = 0.0;
    for (int n = 0; n < 50; ++n) {
        const TransverseParams prm{rng.uniform(-2, 2), rng.uniform(-2, 2), cfg};
        const double x1 = rng.uniform(-6, 6), y1 = rng.uniform(-6, 6);
        const auto [p, q] = p_q_matrices(prm, x1);
        pq = std::max(pq, max_abs(p * q - scalar<2>(bracket_P2(prm, x1))));
        if (n < 20) {
            const double rq_ = quad::tanh_sinh([&](double u) { return bracket_P2(prm, u); }, 0.0, x1).value;
            rq = std::max(rq, std::abs(rq_ - rho(prm, x1)));
            const double L = y1 - x1;
            const double cq = quad::tanh_sinh([&](double u) { return A2_of(prm, u); }, x1, y1).value / L;
            const double dq = quad::tanh_sinh([&](double u) { return A2_of(prm, u) * A2_of(prm, u); }, x1, y1).value / L;
            const CD k = cd_functions(prm, x1, y1);
            cd = std::max(cd, std::max(std::abs(cq - k.c), std::abs(dq - k.d)));
            cd = std::max(cd, std::abs(k.a2 - (1.0 + k.d - k.c * k.c)));
        }
        const double xi1 = rng.normal() * 5.0;
        const auto b = block_sum_residuals(prm, x1, y1, xi1);
        blk = std::max({blk, b.r11, b.r12, b.r21, b.r22});
        const auto bc = block_sum_residuals(prm, x1, x1, xi1);
        const auto P = proj_block_symbols(+1, prm, x1, x1, xi1), M = proj_block_symbols(-1, prm, x1, x1, xi1);
        coin = std::max({coin, bc.r22, max_abs(P.b22 + M.b22 - C2::identity())});
        const LeftRightBlock sum22 = [prm](double x, double y, double k1) {
            return proj_block_symbols(+1, prm, x, y, k1).b22 + proj_block_symbols(-1, prm, x, y, k1).b22;
        };
        lead = std::max(lead, max_abs(leibniz_reduce_leading(sum22, x1, xi1)[0] - C2::identity()));
    }
    s.le("pq_scalarity", pq, 1e-13);
    s.le("rho_vs_quadrature", rq, 1e-10);
    s.le("cd_vs_quadrature", cd, 1e-10);
    s.le("block_sum_identities", blk, 1e-12);
    s.le("coincidence_diagonal", coin, 1e-12);
    s.le("leibniz_leading_identity", lead, 1e-12);

    double er = 0.0;
    for (int n = 0; n < 50; ++n) {
        const TransverseParams prm{rng.uniform(-1, 1), rng.uniform(-1, 1), cfg};
        const double lam = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 5.0);
        const std::array<cplx, 2> c{cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal())};
        const double x1 = rng.uniform(-5, 5);
        const double rate = 0.5 * std::abs(lam) + bracket_P2(prm, x1) / (2.0 * std::abs(lam)) + cfg.omega;
        const auto r = eigenfunction_residual(prm, lam, c, x1, 1e-3 / std::max(1.0, rate));
        er = std::max({er, r.differential, r.algebraic});
    }
    s.le("eigenfunction_residual", er, 1e-6);

    double sub = 0.0;
    for (int n = 0; n < 4; ++n) {
        const TransverseParams prm{rng.uniform(-1, 1), rng.uniform(-1, 1), cfg};
        const double x1 = rng.uniform(-2, 2), tau = rng.uniform(-2, 2);
        sub = std::max(sub, substitution_consistency(prm, x1, tau, gaussian_profile(3.0, 0.3), +1).residual);
        sub = std::max(sub, substitution_consistency(prm, x1, tau, gaussian_profile(-2.5, 0.25), -1).residual);
    }
    s.le("substitution_consistency", sub, 1e-6);

    std::vector<std::pair<double, double>> xy;
    for (int n = 0; n < 6; ++n) xy.emplace_back(rng.uniform(-4, 4), rng.uniform(-4, 4));
    double slope = -INFINITY, sup = 0.0;
    for (int sg : {+1, -1})
        for (const auto& d : proj_directions()) {
            const auto sw_ = proj_decay(sg, o, d, xy);
            slope = std::max(slope, sw_.fit.slope);
            for (double v : sw_.weighted) sup = std::max(sup, v);
        }
    s.le("projection_weighted_slope", slope, 0.05);
    s.le("projection_weighted_sup", sup, 10.0);

    double c11 = 0.0;
    for (int n = 0; n < 30; ++n) {
        const Vec3 xi = rng.normal3(std::pow(10.0, rng.uniform(0.0, 3.0)));
        const double x1 = rng.uniform(-4, 4), y1 = rng.uniform(-4, 4);
        const TransverseParams prm{xi[1], xi[2], cfg};
        const C2 diff = proj_block_symbols(+1, prm, x1, y1, xi[0]).b11 - free_blocks(+1, xi).b11;
        c11 = std::max(c11, std::abs(jbr(xi) * std::abs(diff(0, 0)) - jbr(xi) * block11_difference_closed(cfg, xi, x1, y1)));
    }
    s.le("block11_closed_form", c11, 1e-10);
    s.seconds = sw.seconds();
    return s;
}

// all criteria 1..10 in order
inline std::vector<Suite> run_all_suites(const SuiteOptions& o) {
    return {algebra_suite(o), flow_suite(o),          theta_suite(o),  kappa_suite(o),  spin_suite(o),
            factorization_suite(o), gamma_suite(o), d1_suite(o), ladder_suite(o), spectral_suite(o)};
}

}  // namespace dsym
