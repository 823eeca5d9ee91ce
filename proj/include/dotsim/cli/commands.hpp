// The dotsim subcommands. Each one writes its artifacts plus
// run.log into RunConfig::out_dir.

#pragma once

#include "dotsim/analysis.hpp"
#include "dotsim/cli/config.hpp"
#include "dotsim/cli/output.hpp"
#include "dotsim/error.hpp"
#include "dotsim/integrator.hpp"
#include "dotsim/netlist.hpp"
#include "dotsim/qca.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace dotsim::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerics = 3,
    kExitNetlist = 4,
};

inline int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonFiniteState:
        case ErrorKind::EmptyTrajectory:
            return kExitNumerics;
        case ErrorKind::NetlistSyntax:
        case ErrorKind::CycleDetected:
        case ErrorKind::UnassignedInput:
        case ErrorKind::IndeterminatePolarization:
            return kExitNetlist;
        default:
            return kExitConfig;
    }
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream os(dir / name);
    if (!os) {
        throw std::runtime_error("cannot write " + (dir / name).string());
    }
    return os;
}

inline void write_json(const std::filesystem::path& dir, const std::string& name, const json& j) {
    auto os = open_output(dir, name);
    os << j.dump(2) << '\n';
}

class RunLog {
public:
    explicit RunLog(const RunConfig& cfg) {
        os_ << "dotsim " << to_string(cfg.command) << '\n';
        for (const auto& s : cfg.settings) {
            os_ << s.key << " = " << s.value << "  # " << to_string(s.origin) << '\n';
        }
        if (cfg.scenario_used) {
            for (const auto& s : cfg.settings) {
                if (s.key == "omega_drive" && s.origin == Origin::Default) {
                    os_ << "note: drive frequency omega_drive = " << s.value
                        << " |k| is an assumed default, not a measured value\n";
                }
            }
        }
    }

    template <class T>
    RunLog& operator<<(const T& v) {
        os_ << v;
        return *this;
    }

    void write(const std::filesystem::path& dir) const {
        auto os = open_output(dir, "run.log");
        os << os_.str();
    }

private:
    std::ostringstream os_;
};

inline unsigned sweep_threads() {
    if (const char* env = std::getenv("DOTSIM_THREADS")) {
        try {
            const long v = std::stol(env);
            return v > 0 ? static_cast<unsigned>(v) : 0u;
        } catch (const std::exception&) {
            throw Error(ErrorKind::TypeMismatch, "DOTSIM_THREADS must be an integer");
        }
    }
    return 0;
}

}  // namespace detail

inline void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    detail::RunLog log(cfg);
    const Trajectory traj = integrate(cfg.scenario);
    const Dot dot = occupied_dot(cfg.scenario.initial);
    const LocalizationReport loc = localization_degree(traj, dot, cfg.window);

    json report{
        {"scenario", to_json(cfg.scenario)},
        {"localization", to_json(loc)},
        {"norm_drift", traj.norm_drift},
        {"steps", traj.steps},
        {"rhs_evaluations", traj.rhs_evaluations},
        {"samples", traj.size()},
        {"final", {{"p_left", traj.p_left.back()}, {"p_right", traj.p_right.back()}}},
        {"warnings", to_json(traj.warnings)},
    };
    if (std::holds_alternative<TanhRise>(cfg.scenario.envelope)) {
        report["settled_localization"] = to_json(localization_degree(traj, dot, settled_window(cfg.scenario)));
    }

    {
        auto os = detail::open_output(cfg.out_dir, "trajectory.csv");
        write_trajectory_csv(os, traj);
    }
    detail::write_json(cfg.out_dir, "report.json", report);
    if (cfg.emit_svg) {
        auto os = detail::open_output(cfg.out_dir, "trajectory.svg");
        write_trajectory_svg(os, traj);
    }

    log << "localization degree (" << to_string(dot) << " dot) = " << format_double(loc.degree) << '\n'
        << "norm drift = " << format_double(traj.norm_drift) << '\n'
        << "warnings = " << traj.warnings.size() << '\n';
    log.write(cfg.out_dir);
    out << "degree " << format_double(loc.degree) << " over [" << format_double(loc.window.t_start) << ", "
        << format_double(loc.window.t_end) << "], " << traj.size() << " samples -> " << cfg.out_dir.string()
        << '\n';
}

inline void cmd_compare(const RunConfig& cfg, std::ostream& out) {
    detail::RunLog log(cfg);
    const DivergenceReport r = compare_formulations(cfg.scenario);
    detail::write_json(cfg.out_dir, "divergence.json", to_json(r));
    log << "max |dp_left| = " << format_double(r.max_abs_dp) << " at t = " << format_double(r.at_time) << '\n';
    log.write(cfg.out_dir);
    out << "max |dp_left| " << format_double(r.max_abs_dp) << " at t=" << format_double(r.at_time) << '\n';
}

inline void cmd_bench(const RunConfig& cfg, std::ostream& out) {
    detail::RunLog log(cfg);
    const BenchReport r = bench_formulations(cfg.scenario, cfg.repeats);
    detail::write_json(cfg.out_dir, "bench.json", to_json(r));
    log << "amplitude: " << format_double(r.amplitude.wall_time_median) << " s median, "
        << r.amplitude.rhs_flop_estimate << " flops/rhs\n"
        << "angle: " << format_double(r.angle.wall_time_median) << " s median, " << r.angle.rhs_flop_estimate
        << " flops/rhs\n"
        << "faster: " << to_string(r.faster()) << '\n'
        << "max |dp_left| = " << format_double(r.divergence.max_abs_dp) << '\n';
    log.write(cfg.out_dir);
    out << "amplitude " << r.amplitude.wall_time_median << " s, angle " << r.angle.wall_time_median
        << " s, faster: " << to_string(r.faster()) << ", max |dp_left| " << r.divergence.max_abs_dp << '\n';
}

inline void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    detail::RunLog log(cfg);
    SweepOptions options;
    options.window = cfg.window;
    options.threads = detail::sweep_threads();
    log << "threads = " << (options.threads == 0 ? std::string("auto") : std::to_string(options.threads)) << '\n';
    const SweepResult r = sweep(cfg.scenario, cfg.axes, options);
    {
        auto os = detail::open_output(cfg.out_dir, "sweep.csv");
        write_sweep_csv(os, r);
    }
    if (cfg.emit_svg) {
        auto os = detail::open_output(cfg.out_dir, "sweep.svg");
        write_sweep_svg(os, r);
    }
    log << "cells = " << r.degree.size() << '\n';
    log.write(cfg.out_dir);
    out << r.degree.size() << " cells -> " << (cfg.out_dir / "sweep.csv").string() << '\n';
}

inline std::filesystem::path resolve_netlist(const RunConfig& cfg, const std::filesystem::path& config_dir) {
    std::filesystem::path p(cfg.netlist_path);
    if (p.is_relative() && cfg.netlist_from_file && !config_dir.empty()) {
        return config_dir / p;
    }
    return p;
}

inline void cmd_qca(const RunConfig& cfg, std::ostream& out, const std::filesystem::path& config_dir = {}) {
    detail::RunLog log(cfg);
    const qca::Netlist net = qca::load_netlist(resolve_netlist(cfg, config_dir).string());

    qca::CellState cell{{1.0, 0.0}, {0.0, 0.0}, cfg.eta, cfg.tau_d};
    if (cfg.control_source == ControlSource::Bit1) {
        cell.top = {0.0, 0.0};
        cell.bottom = {1.0, 0.0};
    } else if (cfg.control_source == ControlSource::Simulate) {
        const Trajectory traj = integrate(cfg.scenario);
        cell = qca::cell_from_trajectory(traj, cfg.eta, cfg.tau_d);
        log << "control from simulation: p_left(end) = " << format_double(traj.p_left.back()) << '\n';
    }
    const double p = qca::polarization(cell);
    log << "control polarization = " << format_double(p) << '\n';

    const qca::TruthTable table = qca::truth_table(net, qca::ControlCell{cfg.control_node, cell}, cfg.p_threshold);
    {
        auto os = detail::open_output(cfg.out_dir, "truthtable.csv");
        write_truth_table_csv(os, table);
    }
    log << "rows = " << table.rows.size() << '\n';
    log.write(cfg.out_dir);
    out << "control P=" << format_double(p) << ", " << table.rows.size() << " rows -> "
        << (cfg.out_dir / "truthtable.csv").string() << '\n';
}

/// Runs one command, mapping library errors to the documented exit codes.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err,
               const std::filesystem::path& config_dir = {}) {
    try {
        switch (cfg.command) {
            case Command::Simulate: cmd_simulate(cfg, out); break;
            case Command::Compare: cmd_compare(cfg, out); break;
            case Command::Bench: cmd_bench(cfg, out); break;
            case Command::Sweep: cmd_sweep(cfg, out); break;
            case Command::Qca: cmd_qca(cfg, out, config_dir); break;
        }
    } catch (const Error& e) {
        err << "dotsim: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kExitOk;
}

}  // namespace dotsim::cli
