#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dotsim {

enum class ErrorKind {
    InvalidArgument,
    NegativeTime,
    NotNormalized,
    NonPositiveDistance,
    NonPositiveCapacitance,
    NonFiniteState,
    EmptyWindow,
    UnknownAxisParameter,
    EmptyTrajectory,
    IndeterminatePolarization,
    CycleDetected,
    UnassignedInput,
    NetlistSyntax,
    MissingKey,
    UnknownKey,
    TypeMismatch,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NegativeTime: return "NegativeTime";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
        case ErrorKind::NonPositiveCapacitance: return "NonPositiveCapacitance";
        case ErrorKind::NonFiniteState: return "NonFiniteState";
        case ErrorKind::EmptyWindow: return "EmptyWindow";
        case ErrorKind::UnknownAxisParameter: return "UnknownAxisParameter";
        case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
        case ErrorKind::IndeterminatePolarization: return "IndeterminatePolarization";
        case ErrorKind::CycleDetected: return "CycleDetected";
        case ErrorKind::UnassignedInput: return "UnassignedInput";
        case ErrorKind::NetlistSyntax: return "NetlistSyntax";
        case ErrorKind::MissingKey: return "MissingKey";
        case ErrorKind::UnknownKey: return "UnknownKey";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
    }
    return "Unknown";
}

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Non-fatal conditions recorded alongside results.
enum class WarningKind {
    PoleClamped,
    PoleShifted,
};

constexpr std::string_view to_string(WarningKind kind) noexcept {
    switch (kind) {
        case WarningKind::PoleClamped: return "PoleClamped";
        case WarningKind::PoleShifted: return "PoleShifted";
    }
    return "Unknown";
}

struct Warning {
    double time{0.0};
    WarningKind kind{WarningKind::PoleClamped};

    friend bool operator==(const Warning&, const Warning&) = default;
};

}  // namespace dotsim
