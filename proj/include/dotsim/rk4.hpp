// Classic fixed-step fourth-order Runge-Kutta on small real vectors.

#pragma once

#include "dotsim/error.hpp"

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>

namespace dotsim {

template <std::size_t N>
using RealVector = std::array<double, N>;

template <class F, std::size_t N>
concept VectorField = requires(F f, const RealVector<N>& y, double t) {
    { f(y, t) } -> std::convertible_to<RealVector<N>>;
};

template <std::size_t N>
bool all_finite(const RealVector<N>& y) noexcept {
    for (double v : y) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

namespace detail {
template <std::size_t N>
RealVector<N> axpy(const RealVector<N>& y, double h, const RealVector<N>& k) noexcept {
    RealVector<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + h * k[i];
    }
    return out;
}
}  // namespace detail

// One RK4 step of y' = rhs(y, t). Exactly four rhs evaluations.
template <std::size_t N, VectorField<N> Rhs>
RealVector<N> rk4_step(Rhs&& rhs, const RealVector<N>& y, double t, double dt) {
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "step size must be > 0");
    }
    const double half = 0.5 * dt;
    const RealVector<N> k1 = rhs(y, t);
    const RealVector<N> k2 = rhs(detail::axpy(y, half, k1), t + half);
    const RealVector<N> k3 = rhs(detail::axpy(y, half, k2), t + half);
    const RealVector<N> k4 = rhs(detail::axpy(y, dt, k3), t + dt);

    const double sixth = dt / 6.0;
    RealVector<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!all_finite(out)) {
        throw Error(ErrorKind::NonFiniteState, "state became non-finite at t=" + std::to_string(t + dt));
    }
    return out;
}

}  // namespace dotsim
