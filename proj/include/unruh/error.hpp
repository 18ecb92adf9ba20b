// error.hpp: error type shared by every module.

#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

enum class ErrorCode {
    invalid_state,
    unphysical_state,
    domain_error,
    oracle_failure,
    no_localized_phase,
    complete_positivity_violation,
    model_inconsistency,
    integration_diverged,
    no_steady_state,
    numerical_failure,
    insufficient_data,
    config_error,
    io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace unruh
