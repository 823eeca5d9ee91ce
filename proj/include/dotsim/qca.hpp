// Single QCA cell whose left double dot is set by electron
// localization, plus polarization/bit readout and majority voting.
//
// Top/bottom of the vertical pair map onto the simulated dots as
// a_T = a_R, a_B = a_L.

#pragma once

#include "dotsim/dynamics.hpp"
#include "dotsim/error.hpp"
#include "dotsim/integrator.hpp"

#include <array>
#include <cmath>
#include <string>

namespace dotsim::qca {

inline constexpr double kDefaultThreshold = 0.05;

struct CellState {
    complex top{1.0, 0.0};
    complex bottom{0.0, 0.0};
    double eta{1.0};    // inter-pair coupling, 0 = decoupled, 1 = maximal
    double tau_d{1.0};  // decay constant

    void validate() const {
        const double n2 = std::norm(top) + std::norm(bottom);
        if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-9) {
            throw Error(ErrorKind::NotNormalized, "cell amplitudes have |a_T|²+|a_B|² = " + std::to_string(n2));
        }
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
        }
        if (!(tau_d > 0.0) || !std::isfinite(tau_d)) {
            throw Error(ErrorKind::InvalidArgument, "tau_d must be > 0");
        }
    }
};

// exp(−τη/(1−η)), with its limit 0 at η = 1.
inline double decay_factor(double eta, double tau_d) noexcept {
    if (eta >= 1.0) {
        return 0.0;
    }
    return std::exp(-tau_d * eta / (1.0 - eta));
}

// Coefficients over |TT⟩, |TB⟩, |BT⟩, |BB⟩.
using CellKet = std::array<complex, 4>;

enum KetIndex : std::size_t { TT = 0, TB = 1, BT = 2, BB = 3 };

inline CellKet cell_ket(const CellState& cell) {
    cell.validate();
    const double w = 0.5 * decay_factor(cell.eta, cell.tau_d);
    const double diagonal = std::sqrt(w);
    const double anti = std::sqrt(1.0 - w);
    return {diagonal * cell.top, anti * cell.top, anti * cell.bottom, diagonal * cell.bottom};
}

// P = (|a_T|² − |a_B|²)·[1 − exp(−τη/(1−η))]
inline double polarization(const CellState& cell) {
    cell.validate();
    return (std::norm(cell.top) - std::norm(cell.bottom)) * (1.0 - decay_factor(cell.eta, cell.tau_d));
}

/// Builds a cell from the last recorded amplitudes of a trajectory.
inline CellState cell_from_trajectory(const Trajectory& traj, double eta, double tau_d) {
    if (traj.empty()) {
        throw Error(ErrorKind::EmptyTrajectory, "trajectory has no samples");
    }
    const AmplitudeState& last = traj.amplitudes.back();
    const double n = last.norm();
    CellState cell{last.right / n, last.left / n, eta, tau_d};
    cell.validate();
    return cell;
}

// P = +1 is bit 0, P = −1 is bit 1.
inline int bit_from_polarization(double p, double threshold = kDefaultThreshold) {
    if (!(std::abs(p) > threshold)) {
        throw Error(ErrorKind::IndeterminatePolarization,
                    "polarization " + std::to_string(p) + " is inside the dead zone");
    }
    return p > 0.0 ? 0 : 1;
}

inline double polarization_from_bit(int bit) noexcept { return bit == 0 ? 1.0 : -1.0; }

inline int majority_bit(int a, int b, int c) noexcept { return (a + b + c) >= 2 ? 1 : 0; }

// Saturated output polarization of a three-input majority gate.
inline double majority(double p_a, double p_b, double p_c, double threshold = kDefaultThreshold) {
    const int a = bit_from_polarization(p_a, threshold);
    const int b = bit_from_polarization(p_b, threshold);
    const int c = bit_from_polarization(p_c, threshold);
    return polarization_from_bit(majority_bit(a, b, c));
}

}  // namespace dotsim::qca
