#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace dsym::fd {

inline constexpr double default_rel_step = 1e-5;

// step for a k-th nested derivative at coordinate value c
inline double step(double c, int k = 1, double rel = default_rel_step) {
    const double base = (k <= 1) ? rel : std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (4.0 + k));
    return base * (1.0 + std::abs(c));
}

// 4th-order central first derivative of f at s
template <class F>
auto d1(F&& f, double s, double h) {
    auto a = f(s + h) - f(s - h);
    auto b = f(s + 2.0 * h) - f(s - 2.0 * h);
    return (8.0 * a - b) * (1.0 / (12.0 * h));
}

template <class F>
auto d1(F&& f, double s) {
    return d1(f, s, step(s));
}

// 4th-order central second derivative
template <class F>
auto d2(F&& f, double s, double h) {
    auto f0 = f(s);
    auto a = f(s + h) + f(s - h);
    auto b = f(s + 2.0 * h) + f(s - 2.0 * h);
    return (16.0 * a - b - 30.0 * f0) * (1.0 / (12.0 * h * h));
}

}  // namespace dsym::fd
