#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cacaug {

enum class ErrorCode {
    InvalidInput,
    NotConnected,
    NotCactus,
    SelfLoop,
    InstanceInfeasible,
    NotConnectedOverTerminals,
    InfeasibleLinkSet,
    Infeasible,
    TooLarge,
    Disconnected,
    TooManyTerminals,
    InfeasibleRow,
    Unbounded,
    ZeroMass,
    NoQualifyingRoot,
    ChildlessSteinerNode,
    TooLargeForEnumeration,
    NotWellStructured,
    POutOfRange,
    ClaimViolated,
    SyntaxError,
    SemanticError,
    TerminalWithChildren,
    ThreeTerminalChildren,
    CycleInParentArray,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `detail()` carries the offending
/// edge id, line number or node id when the error code has one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<long> detail = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<long> detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::optional<long> detail_;
};

}  // namespace cacaug
