#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "errors.hpp"
#include "matrix.hpp"

namespace dsym::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

// tanh-sinh on [a, b]; throws QuadratureFailure if the estimate exceeds fail_tol
template <class F>
Result tanh_sinh(F&& f, double a, double b, double tol = 1e-13, double fail_tol = 1e-7) {
    if (a == b) return {};
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    if (b < a) {
        Result r = tanh_sinh(f, b, a, tol, fail_tol);
        r.value = -r.value;
        return r;
    }
    // two-argument overload
    auto g = [&f](double x, double) { return f(x); };
    Result r;
    r.value = integrator.integrate(g, a, b, tol, &r.error, &r.l1);
    if (!std::isfinite(r.value) || r.error > fail_tol * std::max(1.0, r.l1))
        throw QuadratureFailure("tanh-sinh did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                                r.error);
    return r;
}

// adaptive Gauss-Kronrod 61 on [a, b]
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double tol = 1e-14, unsigned max_depth = 20, double fail_tol = 1e-8) {
    if (a == b) return {};
    Result r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &r.error, &r.l1);
    if (!std::isfinite(r.value) || r.error > fail_tol * std::max(1.0, r.l1))
        throw QuadratureFailure("Gauss-Kronrod did not converge", r.error);
    return r;
}

template <class F>
cplx complex_gk(F&& f, double a, double b, double tol = 1e-14) {
    const double re = gauss_kronrod([&](double s) { return std::real(f(s)); }, a, b, tol).value;
    const double im = gauss_kronrod([&](double s) { return std::imag(f(s)); }, a, b, tol).value;
    return {re, im};
}

template <class F>
cplx complex_ts(F&& f, double a, double b, double tol = 1e-13) {
    const double re = tanh_sinh([&](double s) { return std::real(f(s)); }, a, b, tol).value;
    const double im = tanh_sinh([&](double s) { return std::imag(f(s)); }, a, b, tol).value;
    return {re, im};
}

}  // namespace dsym::quad
