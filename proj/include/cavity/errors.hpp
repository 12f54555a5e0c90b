#pragma once

#include <stdexcept>
#include <string>

namespace cavity {

enum class ErrorCode {
    NonPositiveLinewidth,
    ZeroCoupling,
    NegativeWeight,
    OutOfRangeSeparability,
    UnnormalizedState,
    NegativeLag,
    NegativeTime,
    ScenarioMismatch,
    SupernormalState,
    StepTooLarge,
    UnknownRegime,
    WindowTooShort,
    InvalidScenario,
};

const char* error_code_name(ErrorCode code);

/// All validation failures in the library throw this; `field` names the
/// offending input where one exists (used by the CLI for exit-2 messages).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string field, const std::string& message)
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& field, const std::string& message) {
    throw Error(code, field, std::string(error_code_name(code)) + ": " + message);
}

} // namespace cavity
