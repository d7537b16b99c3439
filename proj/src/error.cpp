#include "cacaug/error.hpp"

namespace cacaug {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotConnected: return "NotConnected";
        case ErrorCode::NotCactus: return "NotCactus";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::InstanceInfeasible: return "InstanceInfeasible";
        case ErrorCode::NotConnectedOverTerminals: return "NotConnectedOverTerminals";
        case ErrorCode::InfeasibleLinkSet: return "InfeasibleLinkSet";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::TooManyTerminals: return "TooManyTerminals";
        case ErrorCode::InfeasibleRow: return "InfeasibleRow";
        case ErrorCode::Unbounded: return "Unbounded";
        case ErrorCode::ZeroMass: return "ZeroMass";
        case ErrorCode::NoQualifyingRoot: return "NoQualifyingRoot";
        case ErrorCode::ChildlessSteinerNode: return "ChildlessSteinerNode";
        case ErrorCode::TooLargeForEnumeration: return "TooLargeForEnumeration";
        case ErrorCode::NotWellStructured: return "NotWellStructured";
        case ErrorCode::POutOfRange: return "POutOfRange";
        case ErrorCode::ClaimViolated: return "ClaimViolated";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SemanticError: return "SemanticError";
        case ErrorCode::TerminalWithChildren: return "TerminalWithChildren";
        case ErrorCode::ThreeTerminalChildren: return "ThreeTerminalChildren";
        case ErrorCode::CycleInParentArray: return "CycleInParentArray";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<long> detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(detail) {}

}  // namespace cacaug
