// Driven double-dot model: drive field, amplitude and angle
// equations of motion, and the transforms between the two coordinate sets.
//
// Units: frequencies are in multiples of a reference coupling |k|, times in
// 1/|k|. Nothing here holds state; every function is pure.

#pragma once

#include "dotsim/error.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

namespace dotsim {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Tolerance on |sin 2α| below which cot 2α is clamped.
inline constexpr double kPoleEpsilon = 1e-8;

// Tolerance used by angles_from_amplitudes before it refuses a state.
inline constexpr double kNormTolerance = 1e-6;

// --------------------------------------------------------------------------
// Parameters

struct SystemParams {
    double k{1.0};              // tunneling coupling (signed)
    double omega_coulomb{0.0};  // half the Coulomb charging frequency
    double omega_drive{10.0};   // drive angular frequency
    double rabi_ratio{0.0};     // Rabi frequency / drive frequency
    double phase{0.0};          // drive phase, radians

    static SystemParams create(double k, double omega_coulomb, double omega_drive,
                               double rabi_ratio, double phase = 0.0) {
        SystemParams p{k, omega_coulomb, omega_drive, rabi_ratio, phase};
        p.validate();
        return p;
    }

    void validate() const {
        if (!std::isfinite(k) || k == 0.0) {
            throw Error(ErrorKind::InvalidArgument, "tunneling coupling k must be finite and nonzero");
        }
        if (!std::isfinite(omega_coulomb) || omega_coulomb < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "omega_coulomb must be >= 0");
        }
        if (!std::isfinite(omega_drive) || omega_drive <= 0.0) {
            throw Error(ErrorKind::InvalidArgument, "omega_drive must be > 0");
        }
        if (!std::isfinite(rabi_ratio) || rabi_ratio < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "rabi_ratio must be >= 0");
        }
        if (!std::isfinite(phase)) {
            throw Error(ErrorKind::InvalidArgument, "phase must be finite");
        }
    }

    // Ω_ω, the Rabi frequency.
    double rabi_frequency() const noexcept { return rabi_ratio * omega_drive; }
};

// --------------------------------------------------------------------------
// Envelopes

struct ConstantEnvelope {};

struct TanhRise {
    double tau{1.0};
};

using Envelope = std::variant<ConstantEnvelope, TanhRise>;

inline void validate(const Envelope& env) {
    if (const auto* rise = std::get_if<TanhRise>(&env)) {
        if (!std::isfinite(rise->tau) || rise->tau <= 0.0) {
            throw Error(ErrorKind::InvalidArgument, "tanh rise time tau must be > 0");
        }
    }
}

inline double eval_envelope(const Envelope& env, double t) {
    return std::visit(
        [t](const auto& e) -> double {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, ConstantEnvelope>) {
                return 1.0;
            } else {
                if (t < 0.0) {
                    throw Error(ErrorKind::NegativeTime,
                                "tanh envelope is undefined before the pulse onset (t=" +
                                    std::to_string(t) + ")");
                }
                return std::tanh(t / e.tau);
            }
        },
        env);
}

// F(t) = ½ Ω_ω f(t) cos(ωt + θ)
inline double eval_drive(const SystemParams& params, const Envelope& env, double t) {
    const double f = eval_envelope(env, t);
    return 0.5 * params.rabi_frequency() * f * std::cos(params.omega_drive * t + params.phase);
}

// --------------------------------------------------------------------------
// States

struct AmplitudeState {
    complex left{1.0, 0.0};
    complex right{0.0, 0.0};

    double norm_squared() const noexcept { return std::norm(left) + std::norm(right); }
    double norm() const noexcept { return std::sqrt(norm_squared()); }
    bool is_finite() const noexcept {
        return std::isfinite(left.real()) && std::isfinite(left.imag()) &&
               std::isfinite(right.real()) && std::isfinite(right.imag());
    }

    friend bool operator==(const AmplitudeState&, const AmplitudeState&) = default;
};

struct AngleState {
    double alpha{0.0};
    double phi{0.0};     // ξ − λ, relative phase of right to left
    double lambda{0.0};  // phase of the left amplitude

    friend bool operator==(const AngleState&, const AngleState&) = default;
};

struct AmplitudeDerivatives {
    complex d_left;
    complex d_right;
};

struct AngleDerivatives {
    double d_alpha{0.0};
    double d_phi{0.0};
    bool pole_clamped{false};
};

// Wraps an angle to (−π, π].
inline double wrap_phase(double angle) noexcept {
    double w = std::remainder(angle, 2.0 * kPi);
    if (w <= -kPi) {
        w += 2.0 * kPi;
    }
    return w;
}

// --------------------------------------------------------------------------
// Equations of motion

// Diagonal detuning shared by both amplitudes: F(t) + Ω(|a_R|² − |a_L|²).
inline double detuning(const AmplitudeState& s, double drive, const SystemParams& params) noexcept {
    return drive + params.omega_coulomb * (std::norm(s.right) - std::norm(s.left));
}

inline AmplitudeDerivatives rhs_amplitudes(const AmplitudeState& s, double t,
                                           const SystemParams& params, const Envelope& env) {
    constexpr complex i{0.0, 1.0};
    const double g = detuning(s, eval_drive(params, env, t), params);
    return {
        -i * params.k * s.right + i * g * s.left,
        -i * params.k * s.left - i * g * s.right,
    };
}

// cot(2α), clamped to ±1/kPoleEpsilon where |sin 2α| < kPoleEpsilon.
struct ClampedCot {
    double value;
    bool clamped;
};

inline ClampedCot clamped_cot_double_angle(double alpha) noexcept {
    const double s = std::sin(2.0 * alpha);
    const double c = std::cos(2.0 * alpha);
    if (std::abs(s) < kPoleEpsilon) {
        const double sign = (std::signbit(s) != std::signbit(c)) ? -1.0 : 1.0;
        return {sign / kPoleEpsilon, true};
    }
    return {c / s, false};
}

// dφ/dt = −2F − 2k cosφ cot2α + 2Ω cos2α ;  dα/dt = −k sinφ
inline AngleDerivatives rhs_angles(const AngleState& s, double t, const SystemParams& params,
                                   const Envelope& env) {
    const double drive = eval_drive(params, env, t);
    const auto cot = clamped_cot_double_angle(s.alpha);
    const double cos_2a = std::cos(2.0 * s.alpha);
    AngleDerivatives d;
    d.d_phi = -2.0 * drive - 2.0 * params.k * std::cos(s.phi) * cot.value +
              2.0 * params.omega_coulomb * cos_2a;
    d.d_alpha = -params.k * std::sin(s.phi);
    d.pole_clamped = cot.clamped;
    return d;
}

// dλ/dt, the phase rate of the left amplitude. The two-angle system above
// leaves λ out; this completes it so angle trajectories map back onto full
// amplitudes. Singular at α = π/2 where the left amplitude vanishes.
inline double left_phase_rate(const AngleState& s, double t, const SystemParams& params,
                              const Envelope& env) {
    const double drive = eval_drive(params, env, t);
    const double g = drive - params.omega_coulomb * std::cos(2.0 * s.alpha);
    return g - params.k * std::tan(s.alpha) * std::cos(s.phi);
}

// --------------------------------------------------------------------------
// Coordinate transforms

inline AmplitudeState amplitudes_from_angles(const AngleState& s) {
    return {
        std::polar(std::cos(s.alpha), s.lambda),
        std::polar(std::sin(s.alpha), s.lambda + s.phi),
    };
}

// Inverse of amplitudes_from_angles on canonical angles. arg(0) is taken as 0.
inline AngleState angles_from_amplitudes(const AmplitudeState& s) {
    const double n = s.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::NotNormalized,
                    "amplitude state has norm " + std::to_string(n));
    }
    const double abs_left = std::abs(s.left);
    const double abs_right = std::abs(s.right);
    AngleState out;
    out.alpha = std::atan2(abs_right, abs_left);
    out.lambda = abs_left == 0.0 ? 0.0 : std::arg(s.left);
    out.phi = abs_right == 0.0 ? 0.0 : wrap_phase(std::arg(s.right) - out.lambda);
    return out;
}

}  // namespace dotsim
