// Localization metric, cross-formulation checks, the
// formulation cost benchmark and parameter sweeps.

#pragma once

#include "dotsim/dynamics.hpp"
#include "dotsim/error.hpp"
#include "dotsim/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace dotsim {

enum class Dot { Left, Right };

constexpr std::string_view to_string(Dot d) noexcept { return d == Dot::Left ? "left" : "right"; }

// The dot the electron starts in; custom starts count as left.
inline Dot occupied_dot(const InitialCondition& initial) noexcept {
    return std::holds_alternative<RightDot>(initial) ? Dot::Right : Dot::Left;
}

struct TimeWindow {
    double t_start{0.0};
    double t_end{0.0};
};

// Second half of the run, used for tanh pulses once the envelope has settled.
inline TimeWindow settled_window(const Scenario& sc) noexcept { return {0.5 * sc.t_end, sc.t_end}; }

struct LocalizationReport {
    double degree{1.0};
    double variance{0.0};
    double mean_p{0.0};
    TimeWindow window;
    Dot dot{Dot::Left};
    std::size_t samples{0};
};

/// Localization degree = 1 − population variance of one dot's occupation
/// probability over the samples inside `window` (full run by default).
inline LocalizationReport localization_degree(const Trajectory& traj, Dot dot,
                                              std::optional<TimeWindow> window = std::nullopt) {
    if (traj.empty()) {
        throw Error(ErrorKind::EmptyWindow, "trajectory has no samples");
    }
    const double first = traj.times.front();
    const double last = traj.times.back();
    const TimeWindow w = window.value_or(TimeWindow{first, last});
    constexpr double slack = 1e-12;
    if (!(w.t_start <= w.t_end) || w.t_start < first - slack || w.t_end > last + slack) {
        throw Error(ErrorKind::InvalidArgument, "metric window must lie inside the trajectory");
    }

    const auto& series = dot == Dot::Left ? traj.p_left : traj.p_right;
    std::vector<double> picked;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        if (t >= w.t_start - slack && t <= w.t_end + slack) {
            picked.push_back(series[i]);
        }
    }
    if (picked.size() < 2) {
        throw Error(ErrorKind::EmptyWindow, "fewer than two samples inside the metric window");
    }

    double mean = 0.0;
    for (double p : picked) {
        mean += p;
    }
    mean /= static_cast<double>(picked.size());
    double var = 0.0;
    for (double p : picked) {
        var += (p - mean) * (p - mean);
    }
    var /= static_cast<double>(picked.size());

    LocalizationReport r;
    r.variance = var;
    r.degree = 1.0 - var;
    r.mean_p = mean;
    r.window = w;
    r.dot = dot;
    r.samples = picked.size();
    return r;
}

// --------------------------------------------------------------------------
// Cross-formulation divergence

struct DivergenceReport {
    double max_abs_dp{0.0};
    double at_time{0.0};
    std::vector<Warning> warnings_merged;
};

inline DivergenceReport divergence(const Trajectory& amplitude, const Trajectory& angle) {
    if (amplitude.times != angle.times) {
        throw Error(ErrorKind::InvalidArgument, "trajectories are on different time grids");
    }
    DivergenceReport r;
    for (std::size_t i = 0; i < amplitude.size(); ++i) {
        const double dp = std::abs(amplitude.p_left[i] - angle.p_left[i]);
        if (dp > r.max_abs_dp) {
            r.max_abs_dp = dp;
            r.at_time = amplitude.times[i];
        }
    }
    r.warnings_merged = amplitude.warnings;
    r.warnings_merged.insert(r.warnings_merged.end(), angle.warnings.begin(), angle.warnings.end());
    std::stable_sort(r.warnings_merged.begin(), r.warnings_merged.end(),
                     [](const Warning& a, const Warning& b) { return a.time < b.time; });
    return r;
}

// Both formulations start from the same physical state: the angle start
// (pole-shifted if needed) is converted to amplitudes for the amplitude run.
inline std::pair<Scenario, Scenario> formulation_pair(const Scenario& sc) {
    sc.validate();
    Scenario angle = sc;
    angle.formulation = Formulation::Angle;
    Scenario amplitude = sc;
    amplitude.formulation = Formulation::Amplitude;
    amplitude.initial = angle_start(sc.initial, sc.params.k).state;
    return {amplitude, angle};
}

inline DivergenceReport compare_formulations(const Scenario& sc) {
    const auto [amplitude, angle] = formulation_pair(sc);
    return divergence(integrate(amplitude), integrate(angle));
}

// --------------------------------------------------------------------------
// Computational effort

// Static operation counts per right-hand-side evaluation, read off the
// expressions as written (not the compiled code). Arithmetic counts
// add/sub/mul/div/negate on reals; elementary calls are sin/cos/tan/tanh.
struct OperationCount {
    int arithmetic{0};
    int elementary{0};

    friend OperationCount operator+(OperationCount a, OperationCount b) noexcept {
        return {a.arithmetic + b.arithmetic, a.elementary + b.elementary};
    }
};

// F(t) = ½·(ratio·ω)·f(t)·cos(ωt + θ): ωt, +θ, ratio·ω, ·½, ·f, ·cos -> 6 ops, 1 cos.
// tanh(t/τ) adds one division and one tanh.
inline OperationCount drive_operations(const Envelope& env) noexcept {
    OperationCount c{6, 1};
    if (std::holds_alternative<TanhRise>(env)) {
        c = c + OperationCount{1, 1};
    }
    return c;
}

// g = F + Ω(|a_R|² − |a_L|²): 2 norms (3 each), sub, ·Ω, +F             -> 9
// da_L = −ik·a_R + ig·a_L as reals: 4 products, 2 combines                -> 6
// da_R likewise                                                            -> 6
inline OperationCount amplitude_rhs_operations(const Envelope& env) noexcept {
    return drive_operations(env) + OperationCount{21, 0};
}

// 2α, cot = cos2α/sin2α                                                    -> 2, 2 calls
// dφ = −2F − 2k·cosφ·cot + 2Ω·cos2α: 2F, 2k, ·cosφ, ·cot, 2Ω, ·cos2α, 2 sums -> 8
// dα = −k·sinφ                                                             -> 2
// cosφ, sinφ                                                               -> 2 calls
inline OperationCount angle_rhs_operations(const Envelope& env) noexcept {
    return drive_operations(env) + OperationCount{12, 4};
}

struct FormulationCost {
    Formulation formulation{Formulation::Amplitude};
    int real_ode_dimension{0};
    int rhs_flop_estimate{0};
    int rhs_elementary_calls{0};
    double wall_time_median{0.0};  // seconds
    std::vector<double> wall_time_samples;
    std::size_t steps{0};
    std::size_t rhs_eval_count{0};
};

struct BenchReport {
    FormulationCost amplitude;
    FormulationCost angle;
    DivergenceReport divergence;
    int repeats{0};

    Formulation faster() const noexcept {
        return angle.wall_time_median < amplitude.wall_time_median ? Formulation::Angle
                                                                   : Formulation::Amplitude;
    }
};

namespace detail {
inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace detail

/// Times both formulations on the same scenario (median of `repeats` runs,
/// sequential on the calling thread) and embeds their divergence.
inline BenchReport bench_formulations(const Scenario& sc, int repeats) {
    if (repeats < 3) {
        throw Error(ErrorKind::InvalidArgument, "bench needs at least 3 repeats");
    }
    const auto [amp_sc, ang_sc] = formulation_pair(sc);

    BenchReport report;
    report.repeats = repeats;
    report.amplitude.formulation = Formulation::Amplitude;
    report.amplitude.real_ode_dimension = 4;
    report.angle.formulation = Formulation::Angle;
    report.angle.real_ode_dimension = 2;
    const auto amp_ops = amplitude_rhs_operations(sc.envelope);
    const auto ang_ops = angle_rhs_operations(sc.envelope);
    report.amplitude.rhs_flop_estimate = amp_ops.arithmetic;
    report.amplitude.rhs_elementary_calls = amp_ops.elementary;
    report.angle.rhs_flop_estimate = ang_ops.arithmetic;
    report.angle.rhs_elementary_calls = ang_ops.elementary;

    using clock = std::chrono::steady_clock;
    auto timed = [](const Scenario& s, FormulationCost& cost) {
        const auto t0 = clock::now();
        Trajectory traj = integrate(s);
        const auto t1 = clock::now();
        cost.wall_time_samples.push_back(std::chrono::duration<double>(t1 - t0).count());
        cost.steps = traj.steps;
        cost.rhs_eval_count = traj.rhs_evaluations;
        return traj;
    };

    std::optional<Trajectory> amp_traj;
    std::optional<Trajectory> ang_traj;
    for (int r = 0; r < repeats; ++r) {
        amp_traj = timed(amp_sc, report.amplitude);
        ang_traj = timed(ang_sc, report.angle);
    }
    report.amplitude.wall_time_median = detail::median(report.amplitude.wall_time_samples);
    report.angle.wall_time_median = detail::median(report.angle.wall_time_samples);
    report.divergence = divergence(*amp_traj, *ang_traj);
    return report;
}

// --------------------------------------------------------------------------
// Sweeps

enum class AxisParameter { OmegaCoulomb, RabiRatio, Tau, OmegaDrive, Phase };

constexpr std::string_view to_string(AxisParameter p) noexcept {
    switch (p) {
        case AxisParameter::OmegaCoulomb: return "omega_coulomb";
        case AxisParameter::RabiRatio: return "rabi_ratio";
        case AxisParameter::Tau: return "tau";
        case AxisParameter::OmegaDrive: return "omega_drive";
        case AxisParameter::Phase: return "phase";
    }
    return "unknown";
}

inline AxisParameter parse_axis_parameter(std::string_view name) {
    for (auto p : {AxisParameter::OmegaCoulomb, AxisParameter::RabiRatio, AxisParameter::Tau,
                   AxisParameter::OmegaDrive, AxisParameter::Phase}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw Error(ErrorKind::UnknownAxisParameter, "cannot sweep '" + std::string(name) + "'");
}

struct SweepAxis {
    AxisParameter parameter{AxisParameter::OmegaCoulomb};
    std::vector<double> values;
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<double> degree;            // row-major over axes
    std::vector<std::size_t> warning_count;

    std::size_t rows() const noexcept { return axes.empty() ? 0 : axes[0].values.size(); }
    std::size_t cols() const noexcept { return axes.size() < 2 ? 1 : axes[1].values.size(); }
    double at(std::size_t i, std::size_t j = 0) const { return degree.at(i * cols() + j); }
};

struct SweepOptions {
    std::optional<TimeWindow> window;
    unsigned threads{0};  // 0 = hardware concurrency
};

inline Scenario with_axis_value(Scenario sc, AxisParameter p, double value) {
    switch (p) {
        case AxisParameter::OmegaCoulomb: sc.params.omega_coulomb = value; break;
        case AxisParameter::RabiRatio: sc.params.rabi_ratio = value; break;
        case AxisParameter::OmegaDrive: sc.params.omega_drive = value; break;
        case AxisParameter::Phase: sc.params.phase = value; break;
        case AxisParameter::Tau: {
            auto* rise = std::get_if<TanhRise>(&sc.envelope);
            if (rise == nullptr) {
                throw Error(ErrorKind::InvalidArgument, "tau axis needs a tanh envelope");
            }
            rise->tau = value;
            break;
        }
    }
    return sc;
}

// Scenario for grid cell (i, j); exposed so cells can be reproduced directly.
inline Scenario sweep_cell(const Scenario& base, const std::vector<SweepAxis>& axes,
                           std::size_t i, std::size_t j = 0) {
    Scenario sc = with_axis_value(base, axes.at(0).parameter, axes[0].values.at(i));
    if (axes.size() == 2) {
        sc = with_axis_value(sc, axes[1].parameter, axes[1].values.at(j));
    }
    return sc;
}

inline SweepResult sweep(const Scenario& base, std::vector<SweepAxis> axes,
                         const SweepOptions& options = {}) {
    if (axes.empty() || axes.size() > 2) {
        throw Error(ErrorKind::InvalidArgument, "sweep takes one or two axes");
    }
    for (const auto& a : axes) {
        if (a.values.empty()) {
            throw Error(ErrorKind::InvalidArgument,
                        "sweep axis '" + std::string(to_string(a.parameter)) + "' has no values");
        }
    }
    SweepResult result;
    result.axes = std::move(axes);
    const std::size_t cols = result.cols();
    const std::size_t cells = result.rows() * cols;
    result.degree.assign(cells, 0.0);
    result.warning_count.assign(cells, 0);

    // Validate every cell up front so bad grids fail before any work starts.
    for (std::size_t c = 0; c < cells; ++c) {
        sweep_cell(base, result.axes, c / cols, c % cols).validate();
    }

    const Dot dot = occupied_dot(base.initial);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t c = next++; c < cells; c = next++) {
            try {
                const Scenario sc = sweep_cell(base, result.axes, c / cols, c % cols);
                const Trajectory traj = integrate(sc);
                result.degree[c] = localization_degree(traj, dot, options.window).degree;
                result.warning_count[c] = traj.warnings.size();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = cells;
            }
        }
    };

    unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

}  // namespace dotsim
