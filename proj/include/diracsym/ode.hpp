#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "errors.hpp"

namespace dsym {

template <std::size_t N>
using State = std::array<double, N>;

struct IntegratorStats {
    long steps = 0;
    long rhs_evals = 0;
    double min_dt = 0.0;
    double max_dt = 0.0;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double min_dt = 1e-14;
    double initial_dt = 1e-3;
};

// Dormand-Prince 5(4) with dense output; returns states at `times`
// (monotone away from t0, either direction)
template <std::size_t N, class Rhs>
std::vector<State<N>> integrate_dense(Rhs&& rhs, const State<N>& y0, double t0, const std::vector<double>& times,
                                      const OdeOptions& opt, IntegratorStats* stats = nullptr) {
    namespace odeint = boost::numeric::odeint;
    std::vector<State<N>> out;
    out.reserve(times.size());
    if (times.empty()) return out;

    const double t_end = times.back();
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    IntegratorStats st;
    st.min_dt = INFINITY;

    auto sys = [&](const State<N>& y, State<N>& dy, double t) {
        ++st.rhs_evals;
        rhs(y, dy, t);
    };

    std::size_t k = 0;
    while (k < times.size() && dir * (times[k] - t0) <= 0.0) out.push_back(y0), ++k;

    if (k < times.size()) {
        auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State<N>>());
        stepper.initialize(y0, t0, dir * std::min(opt.initial_dt, std::abs(t_end - t0)));
        State<N> y{};
        while (k < times.size()) {
            std::pair<double, double> iv;
            try {
                iv = stepper.do_step(sys);
            } catch (const odeint::step_adjustment_error& e) {
                throw StepFailure(std::string("step size control failed at t = ") +
                                  std::to_string(stepper.current_time()) + ": " + e.what());
            }
            const double dt = std::abs(iv.second - iv.first);
            ++st.steps;
            st.min_dt = std::min(st.min_dt, dt);
            st.max_dt = std::max(st.max_dt, dt);
            if (dt < opt.min_dt && dir * (t_end - iv.second) > 0.0)
                throw StepFailure("step size underflow at t = " + std::to_string(iv.second));
            for (double v : stepper.current_state())
                if (!std::isfinite(v)) throw StepFailure("non-finite state at t = " + std::to_string(iv.second));
            while (k < times.size() && dir * (times[k] - iv.second) <= 0.0) {
                stepper.calc_state(times[k], y);
                out.push_back(y);
                ++k;
            }
        }
    }
    if (stats) *stats = st;
    return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) { v[0] = b; return v; }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = b;
    return v;
}

}  // namespace dsym
