#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace dsym {

using cplx = std::complex<double>;
inline constexpr cplx I_unit{0.0, 1.0};

// ── Real 3-vectors ──────────────────────────────────────────────────────────

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double a, double b, double c) : v{a, b, c} {}

    constexpr double& operator[](std::size_t i) { return v[i]; }
    constexpr double operator[](std::size_t i) const { return v[i]; }

    Vec3& operator+=(const Vec3& o) { for (int i = 0; i < 3; ++i) v[i] += o.v[i]; return *this; }
    Vec3& operator-=(const Vec3& o) { for (int i = 0; i < 3; ++i) v[i] -= o.v[i]; return *this; }
    Vec3& operator*=(double s) { for (auto& e : v) e *= s; return *this; }

    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator-(Vec3 a) { return a *= -1.0; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    static constexpr Vec3 unit(int j) {
        Vec3 e;
        e.v[static_cast<std::size_t>(j)] = 1.0;
        return e;
    }
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Japanese bracket <z> = sqrt(1 + |z|^2)
inline double jbr(const Vec3& z) { return std::sqrt(1.0 + dot(z, z)); }

// ── Fixed-size complex matrices ─────────────────────────────────────────────

template <std::size_t R, std::size_t C = R>
struct Mat {
    std::array<cplx, R * C> a{};

    static constexpr std::size_t rows = R;
    static constexpr std::size_t cols = C;

    constexpr cplx& operator()(std::size_t i, std::size_t j) { return a[i * C + j]; }
    constexpr const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * C + j]; }

    static constexpr Mat identity() requires(R == C) {
        Mat m;
        for (std::size_t i = 0; i < R; ++i) m(i, i) = 1.0;
        return m;
    }
    static constexpr Mat zero() { return Mat{}; }

    Mat& operator+=(const Mat& o) { for (std::size_t k = 0; k < R * C; ++k) a[k] += o.a[k]; return *this; }
    Mat& operator-=(const Mat& o) { for (std::size_t k = 0; k < R * C; ++k) a[k] -= o.a[k]; return *this; }
    Mat& operator*=(cplx s) { for (auto& e : a) e *= s; return *this; }

    friend Mat operator+(Mat x, const Mat& y) { return x += y; }
    friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
    friend Mat operator-(Mat x) { return x *= -1.0; }
    friend Mat operator*(cplx s, Mat x) { return x *= s; }
    friend Mat operator*(Mat x, cplx s) { return x *= s; }
    friend Mat operator*(double s, Mat x) { return x *= cplx(s); }
    friend Mat operator*(Mat x, double s) { return x *= cplx(s); }
    friend Mat operator/(Mat x, double s) { return x *= cplx(1.0 / s); }
    friend bool operator==(const Mat&, const Mat&) = default;
};

template <std::size_t R, std::size_t K, std::size_t C>
Mat<R, C> operator*(const Mat<R, K>& x, const Mat<K, C>& y) {
    Mat<R, C> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{}) continue;
            for (std::size_t j = 0; j < C; ++j) out(i, j) += xik * y(k, j);
        }
    return out;
}

using C2 = Mat<2>;
using C4 = Mat<4>;
using C42 = Mat<4, 2>;

template <std::size_t R, std::size_t C>
Mat<C, R> adjoint(const Mat<R, C>& m) {
    Mat<C, R> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

template <std::size_t N>
cplx trace(const Mat<N>& m) {
    cplx s{};
    for (std::size_t i = 0; i < N; ++i) s += m(i, i);
    return s;
}

template <std::size_t R, std::size_t C>
double frob(const Mat<R, C>& m) {
    double s = 0.0;
    for (const auto& e : m.a) s += std::norm(e);
    return std::sqrt(s);
}

template <std::size_t R, std::size_t C>
double max_abs(const Mat<R, C>& m) {
    double s = 0.0;
    for (const auto& e : m.a) s = std::max(s, std::abs(e));
    return s;
}

template <std::size_t N>
Mat<N> comm(const Mat<N>& x, const Mat<N>& y) { return x * y - y * x; }

template <std::size_t N>
Mat<N> anticomm(const Mat<N>& x, const Mat<N>& y) { return x * y + y * x; }

// block assembly of a 4x4 matrix from 2x2 blocks
inline C4 blocks(const C2& b11, const C2& b12, const C2& b21, const C2& b22) {
    C4 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j) = b11(i, j);
            m(i, j + 2) = b12(i, j);
            m(i + 2, j) = b21(i, j);
            m(i + 2, j + 2) = b22(i, j);
        }
    return m;
}

inline C2 block(const C4& m, int bi, int bj) {
    C2 b;
    const std::size_t oi = static_cast<std::size_t>(2 * bi), oj = static_cast<std::size_t>(2 * bj);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) b(i, j) = m(oi + i, oj + j);
    return b;
}

inline C42 stack(const C2& top, const C2& bottom) {
    C42 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j) = top(i, j);
            m(i + 2, j) = bottom(i, j);
        }
    return m;
}

template <std::size_t N>
Mat<N> scalar(cplx s) { return s * Mat<N>::identity(); }

inline C2 inverse(const C2& m) {
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    C2 r;
    r(0, 0) = m(1, 1) / det;
    r(1, 1) = m(0, 0) / det;
    r(0, 1) = -m(0, 1) / det;
    r(1, 0) = -m(1, 0) / det;
    return r;
}

// ── Pauli matrices in the convention used throughout ────────────────────────
//   s1 = [[0, i], [-i, 0]],  s2 = [[0, 1], [1, 0]],  s3 = diag(1, -1)
// with s1 s2 = i s3 and cyclic.

inline C2 pauli(int j) {
    C2 s;
    switch (j) {
        case 1: s(0, 1) = I_unit; s(1, 0) = -I_unit; break;
        case 2: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
        default: s = C2::identity(); break;
    }
    return s;
}

// sigma . v for real v
inline C2 sigma_dot(const Vec3& v) {
    return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3);
}

}  // namespace dsym
