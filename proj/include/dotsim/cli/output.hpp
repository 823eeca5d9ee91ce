// CSV/JSON/SVG serialization of trajectories and reports.

#pragma once

#include "dotsim/analysis.hpp"
#include "dotsim/integrator.hpp"
#include "dotsim/netlist.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dotsim::cli {

using json = nlohmann::json;

inline constexpr std::string_view kTrajectoryHeader = "t,p_left,p_right,alpha,phi,re_aL,im_aL,re_aR,im_aR";

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << kTrajectoryHeader << '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& a = traj.amplitudes[i];
        os << format_double(traj.times[i]) << ',' << format_double(traj.p_left[i]) << ','
           << format_double(traj.p_right[i]) << ',' << format_double(traj.alpha[i]) << ','
           << format_double(traj.phi[i]) << ',' << format_double(a.left.real()) << ','
           << format_double(a.left.imag()) << ',' << format_double(a.right.real()) << ','
           << format_double(a.right.imag()) << '\n';
    }
}

// --------------------------------------------------------------------------
// JSON

inline json to_json(const std::vector<Warning>& warnings) {
    json arr = json::array();
    for (const auto& w : warnings) {
        arr.push_back({{"time", w.time}, {"kind", std::string(to_string(w.kind))}});
    }
    return arr;
}

inline json to_json(const LocalizationReport& r) {
    return {
        {"degree", r.degree},
        {"variance", r.variance},
        {"mean_p", r.mean_p},
        {"window", {r.window.t_start, r.window.t_end}},
        {"dot", std::string(to_string(r.dot))},
        {"samples", r.samples},
    };
}

inline json to_json(const DivergenceReport& r) {
    return {
        {"max_abs_dp", r.max_abs_dp},
        {"at_time", r.at_time},
        {"warnings_merged", to_json(r.warnings_merged)},
    };
}

inline json to_json(const FormulationCost& c) {
    return {
        {"formulation", std::string(to_string(c.formulation))},
        {"real_ode_dimension", c.real_ode_dimension},
        {"rhs_flop_estimate", c.rhs_flop_estimate},
        {"rhs_elementary_calls", c.rhs_elementary_calls},
        {"wall_time_total", c.wall_time_median},
        {"wall_time_samples", c.wall_time_samples},
        {"steps", c.steps},
        {"rhs_eval_count", c.rhs_eval_count},
    };
}

inline json to_json(const BenchReport& r) {
    return {
        {"repeats", r.repeats},
        {"amplitude", to_json(r.amplitude)},
        {"angle", to_json(r.angle)},
        {"faster", std::string(to_string(r.faster()))},
        {"divergence", to_json(r.divergence)},
    };
}

inline json to_json(const Scenario& sc) {
    json env;
    if (const auto* rise = std::get_if<TanhRise>(&sc.envelope)) {
        env = {{"kind", "tanh"}, {"tau", rise->tau}};
    } else {
        env = {{"kind", "constant"}};
    }
    json initial;
    if (std::holds_alternative<LeftDot>(sc.initial)) {
        initial = "left";
    } else if (std::holds_alternative<RightDot>(sc.initial)) {
        initial = "right";
    } else {
        const auto& s = std::get<AngleState>(sc.initial);
        initial = {{"alpha", s.alpha}, {"phi", s.phi}, {"lambda", s.lambda}};
    }
    return {
        {"k", sc.params.k},
        {"omega_coulomb", sc.params.omega_coulomb},
        {"omega_drive", sc.params.omega_drive},
        {"rabi_ratio", sc.params.rabi_ratio},
        {"phase", sc.params.phase},
        {"envelope", env},
        {"formulation", std::string(to_string(sc.formulation))},
        {"initial", initial},
        {"t_end", sc.t_end},
        {"dt", sc.dt},
        {"sample_stride", sc.sample_stride},
    };
}

// --------------------------------------------------------------------------
// CSV reports

inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    for (const auto& axis : r.axes) {
        os << to_string(axis.parameter) << ',';
    }
    os << "degree,warnings\n";
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            os << format_double(r.axes[0].values[i]) << ',';
            if (r.axes.size() == 2) {
                os << format_double(r.axes[1].values[j]) << ',';
            }
            const std::size_t c = i * r.cols() + j;
            os << format_double(r.degree[c]) << ',' << r.warning_count[c] << '\n';
        }
    }
}

inline void write_truth_table_csv(std::ostream& os, const qca::TruthTable& table) {
    std::vector<std::string> header = table.input_ids;
    header.insert(header.end(), table.probe_ids.begin(), table.probe_ids.end());
    for (std::size_t i = 0; i < header.size(); ++i) {
        os << (i ? "," : "") << header[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        bool first = true;
        for (const auto& id : table.input_ids) {
            os << (first ? "" : ",") << row.inputs.at(id);
            first = false;
        }
        for (const auto& [id, bit] : row.outputs) {
            os << (first ? "" : ",") << bit;
            first = false;
        }
        os << '\n';
    }
}

// --------------------------------------------------------------------------
// SVG

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

inline std::string svg_number(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace detail

/// Polyline chart with axes, min/max tick labels and a legend.
inline void write_line_chart_svg(std::ostream& os, const std::vector<Series>& series,
                                 const std::string& x_label, const std::string& y_label,
                                 double y_min, double y_max) {
    constexpr double width = 800, height = 420, left = 70, right = 20, top = 20, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = 0.0, x_max = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (double x : s.x) {
            x_min = first ? x : std::min(x_min, x);
            x_max = first ? x : std::max(x_max, x);
            first = false;
        }
    }
    if (x_max <= x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max <= y_min) {
        y_max = y_min + 1.0;
    }
    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };
    using detail::svg_number;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
       << top + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left << "\" y=\"" << top + plot_h + 16 << "\">" << svg_number(x_min) << "</text>\n";
    os << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"end\">"
       << svg_number(x_max) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h << "\" text-anchor=\"end\">" << svg_number(y_min)
       << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << svg_number(y_max)
       << "</text>\n";
    os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">" << x_label
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << top + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            os << svg_number(px(s.x[i])) << ',' << svg_number(py(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        const double ly = top + 14 + 16 * static_cast<double>(k);
        os << "<line x1=\"" << left + plot_w - 120 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + plot_w - 100
           << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + plot_w - 95 << "\" y=\"" << ly << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
}

inline void write_trajectory_svg(std::ostream& os, const Trajectory& traj) {
    write_line_chart_svg(os,
                         {{"p_left", "#1f77b4", traj.times, traj.p_left},
                          {"p_right", "#d62728", traj.times, traj.p_right}},
                         "t [1/|k|]", "probability", 0.0, 1.0);
}

/// Sweep plot: a heatmap for two axes, a line chart for one.
inline void write_sweep_svg(std::ostream& os, const SweepResult& r) {
    if (r.axes.size() == 1) {
        write_line_chart_svg(os, {{"degree", "#1f77b4", r.axes[0].values, r.degree}},
                             std::string(to_string(r.axes[0].parameter)), "localization degree", 0.75, 1.0);
        return;
    }
    constexpr double cell = 28, left = 90, top = 20;
    const double width = left + cell * static_cast<double>(r.cols()) + 20;
    const double height = top + cell * static_cast<double>(r.rows()) + 50;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            // degree lies in [0.75, 1]; map to a blue→yellow ramp
            const double u = std::clamp((r.at(i, j) - 0.75) / 0.25, 0.0, 1.0);
            const int red = static_cast<int>(40 + 215 * u);
            const int green = static_cast<int>(40 + 190 * u);
            const int blue = static_cast<int>(160 * (1.0 - u));
            os << "<rect x=\"" << left + cell * static_cast<double>(j) << "\" y=\""
               << top + cell * static_cast<double>(i) << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"rgb(" << red << ',' << green << ',' << blue << ")\"><title>"
               << detail::svg_number(r.at(i, j)) << "</title></rect>\n";
        }
        os << "<text x=\"" << left - 4 << "\" y=\"" << top + cell * (static_cast<double>(i) + 0.65)
           << "\" text-anchor=\"end\">" << detail::svg_number(r.axes[0].values[i]) << "</text>\n";
    }
    os << "<text x=\"" << left << "\" y=\"" << height - 28 << "\">" << to_string(r.axes[1].parameter) << ": "
       << detail::svg_number(r.axes[1].values.front()) << " … " << detail::svg_number(r.axes[1].values.back())
       << "</text>\n";
    os << "<text x=\"" << left << "\" y=\"" << height - 12 << "\">rows: " << to_string(r.axes[0].parameter)
       << "</text>\n";
    os << "</svg>\n";
}

}  // namespace dotsim::cli
