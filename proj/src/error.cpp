#include "unruh/error.hpp"

namespace unruh {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_state: return "invalid state";
        case ErrorCode::unphysical_state: return "unphysical state";
        case ErrorCode::domain_error: return "domain error";
        case ErrorCode::oracle_failure: return "oracle failure";
        case ErrorCode::no_localized_phase: return "no localized phase";
        case ErrorCode::complete_positivity_violation: return "complete positivity violation";
        case ErrorCode::model_inconsistency: return "model inconsistency";
        case ErrorCode::integration_diverged: return "integration diverged";
        case ErrorCode::no_steady_state: return "no steady state";
        case ErrorCode::numerical_failure: return "numerical failure";
        case ErrorCode::insufficient_data: return "insufficient data";
        case ErrorCode::config_error: return "config error";
        case ErrorCode::io_error: return "i/o error";
    }
    return "error";
}

}  // namespace unruh
