// Fixed-step propagation of either formulation into a
// sampled Trajectory.

#pragma once

#include "dotsim/dynamics.hpp"
#include "dotsim/error.hpp"
#include "dotsim/rk4.hpp"

#include <cmath>
#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

namespace dotsim {

enum class Formulation { Amplitude, Angle };

constexpr std::string_view to_string(Formulation f) noexcept {
    return f == Formulation::Amplitude ? "amplitude" : "angle";
}

struct LeftDot {};
struct RightDot {};
using InitialCondition = std::variant<LeftDot, RightDot, AngleState>;

// Distance by which a localized start is moved off the angle-coordinate pole.
inline constexpr double kPoleShift = 1e-6;

struct Scenario {
    SystemParams params;
    Envelope envelope{ConstantEnvelope{}};
    Formulation formulation{Formulation::Amplitude};
    InitialCondition initial{LeftDot{}};
    double t_end{50.0};
    double dt{1e-3};
    std::size_t sample_stride{10};

    void validate() const {
        params.validate();
        dotsim::validate(envelope);
        if (!std::isfinite(t_end) || t_end <= 0.0) {
            throw Error(ErrorKind::InvalidArgument, "t_end must be > 0");
        }
        if (!std::isfinite(dt) || dt <= 0.0 || dt > t_end) {
            throw Error(ErrorKind::InvalidArgument, "dt must satisfy 0 < dt <= t_end");
        }
        if (sample_stride < 1) {
            throw Error(ErrorKind::InvalidArgument, "sample_stride must be >= 1");
        }
    }
};

struct Trajectory {
    Formulation formulation{Formulation::Amplitude};
    std::vector<double> times;
    std::vector<double> p_left;
    std::vector<double> p_right;
    std::vector<double> alpha;
    std::vector<double> phi;
    std::vector<AmplitudeState> amplitudes;
    std::vector<Warning> warnings;
    double norm_drift{0.0};
    std::size_t steps{0};
    std::size_t rhs_evaluations{0};

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
};

// Number of RK4 steps covering [0, t_end]; the last step is shortened when
// t_end is not a multiple of dt.
inline std::size_t step_count(double t_end, double dt) {
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::ceil(ratio));
}

inline bool on_pole(double alpha) noexcept {
    return std::abs(std::sin(2.0 * alpha)) < kPoleEpsilon;
}

struct AngleStart {
    AngleState state;
    bool shifted{false};
};

// Starting angles for the angle formulation. A localized start sits on the
// cot(2α) pole, where φ is undefined; it is moved kPoleShift off the pole with
// φ set to the direction the exact flow leaves it (−sgn k·π/2 from the left
// dot, +sgn k·π/2 from the right), so the cot term starts out zero.
inline AngleStart angle_start(const InitialCondition& initial, double k) {
    const double flow = std::copysign(0.5 * kPi, k);
    const AngleState left_pole{kPoleShift, -flow, 0.0};
    const AngleState right_pole{0.5 * kPi - kPoleShift, flow, -flow};

    if (std::holds_alternative<LeftDot>(initial)) {
        return {left_pole, true};
    }
    if (std::holds_alternative<RightDot>(initial)) {
        return {right_pole, true};
    }
    const AngleState s = std::get<AngleState>(initial);
    if (!on_pole(s.alpha)) {
        return {s, false};
    }
    const double c = std::cos(s.alpha);
    if (c * c >= 0.5) {
        AngleState out = left_pole;
        out.lambda = s.lambda;
        return {out, true};
    }
    // Keep the phase of the occupied right amplitude, ξ = λ + φ.
    AngleState out = right_pole;
    out.lambda = wrap_phase(s.lambda + s.phi - out.phi);
    return {out, true};
}

inline AmplitudeState amplitude_start(const InitialCondition& initial) {
    if (std::holds_alternative<LeftDot>(initial)) {
        return {{1.0, 0.0}, {0.0, 0.0}};
    }
    if (std::holds_alternative<RightDot>(initial)) {
        return {{0.0, 0.0}, {1.0, 0.0}};
    }
    return amplitudes_from_angles(std::get<AngleState>(initial));
}

namespace detail {

inline RealVector<4> pack(const AmplitudeState& s) noexcept {
    return {s.left.real(), s.left.imag(), s.right.real(), s.right.imag()};
}

inline AmplitudeState unpack(const RealVector<4>& y) noexcept {
    return {{y[0], y[1]}, {y[2], y[3]}};
}

class TrajectoryRecorder {
public:
    explicit TrajectoryRecorder(Trajectory& out) : out_(out) {}

    void record_amplitudes(double t, const AmplitudeState& s) {
        const double n2 = s.norm_squared();
        const double n = std::sqrt(n2);
        out_.norm_drift = std::max(out_.norm_drift, std::abs(n - 1.0));
        const AmplitudeState unit{s.left / n, s.right / n};
        const AngleState a = angles_from_amplitudes(unit);
        push(t, std::norm(s.left) / n2, std::norm(s.right) / n2, a, s);
    }

    void record_angles(double t, const AngleState& raw) {
        const AmplitudeState amps = amplitudes_from_angles(raw);
        out_.norm_drift = std::max(out_.norm_drift, std::abs(amps.norm() - 1.0));
        const AngleState a = angles_from_amplitudes(amps);
        const double c = std::cos(raw.alpha);
        const double s = std::sin(raw.alpha);
        push(t, c * c, s * s, a, amps);
    }

private:
    void push(double t, double pl, double pr, const AngleState& a, const AmplitudeState& amps) {
        out_.times.push_back(t);
        out_.p_left.push_back(pl);
        out_.p_right.push_back(pr);
        out_.alpha.push_back(a.alpha);
        out_.phi.push_back(a.phi);
        out_.amplitudes.push_back(amps);
    }

    Trajectory& out_;
};

// Drives rk4_step over the step grid and calls record(t, y) on sampled steps.
template <std::size_t N, class Rhs, class Record>
void march(const Scenario& sc, RealVector<N> y, Rhs&& rhs, Record&& record,
           Trajectory& out) {
    const std::size_t n = step_count(sc.t_end, sc.dt);
    record(0.0, y);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * sc.dt;
        const bool last = (i + 1 == n);
        const double h = last ? sc.t_end - t : sc.dt;
        y = rk4_step<N>(rhs, y, t, h);
        if (last || (i + 1) % sc.sample_stride == 0) {
            record(last ? sc.t_end : static_cast<double>(i + 1) * sc.dt, y);
        }
    }
    out.steps = n;
}

}  // namespace detail

inline Trajectory integrate(const Scenario& sc) {
    sc.validate();
    Trajectory out;
    out.formulation = sc.formulation;
    detail::TrajectoryRecorder recorder(out);
    std::size_t evaluations = 0;

    if (sc.formulation == Formulation::Amplitude) {
        auto rhs = [&](const RealVector<4>& y, double t) -> RealVector<4> {
            ++evaluations;
            const auto d = rhs_amplitudes(detail::unpack(y), t, sc.params, sc.envelope);
            return {d.d_left.real(), d.d_left.imag(), d.d_right.real(), d.d_right.imag()};
        };
        auto record = [&](double t, const RealVector<4>& y) {
            recorder.record_amplitudes(t, detail::unpack(y));
        };
        detail::march<4>(sc, detail::pack(amplitude_start(sc.initial)), rhs, record, out);
    } else {
        const AngleStart start = angle_start(sc.initial, sc.params.k);
        if (start.shifted) {
            out.warnings.push_back({0.0, WarningKind::PoleShifted});
        }
        const double lambda = start.state.lambda;
        bool clamped = false;
        auto rhs = [&](const RealVector<2>& y, double t) -> RealVector<2> {
            ++evaluations;
            const auto d = rhs_angles({y[0], y[1], lambda}, t, sc.params, sc.envelope);
            if (d.pole_clamped && !clamped) {
                clamped = true;
                out.warnings.push_back({t, WarningKind::PoleClamped});
            }
            return {d.d_alpha, d.d_phi};
        };
        auto record = [&](double t, const RealVector<2>& y) {
            // One PoleClamped entry per sampling interval.
            clamped = false;
            recorder.record_angles(t, {y[0], y[1], lambda});
        };
        detail::march<2>(sc, {start.state.alpha, start.state.phi}, rhs, record, out);
    }
    out.rhs_evaluations = evaluations;
    return out;
}

}  // namespace dotsim
