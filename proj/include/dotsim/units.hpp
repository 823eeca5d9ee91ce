// SI helpers for turning device quantities into model frequencies.

#pragma once

#include "dotsim/error.hpp"

#include <cmath>

namespace dotsim::units {

// CODATA 2018 exact / recommended values.
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kHbar = 1.054571817e-34;               // J s

/// Rabi frequency Ω_ω = 2 e E0 d / ħ in rad/s, for field amplitude E0 (V/m)
/// and dot centre-to-centre distance d (m).
inline double rabi_from_field(double field_amplitude, double distance) {
    if (!(distance > 0.0)) {
        throw Error(ErrorKind::NonPositiveDistance, "dot separation must be > 0");
    }
    if (!(field_amplitude >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "field amplitude must be >= 0");
    }
    return 2.0 * kElementaryCharge * field_amplitude * distance / kHbar;
}

/// Half the Coulomb charging frequency Ω = e² / (4 ħ C) in rad/s.
inline double charging_from_capacitance(double capacitance) {
    if (!(capacitance > 0.0)) {
        throw Error(ErrorKind::NonPositiveCapacitance, "capacitance must be > 0");
    }
    return kElementaryCharge * kElementaryCharge / (4.0 * kHbar * capacitance);
}

}  // namespace dotsim::units
