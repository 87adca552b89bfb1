#pragma once

#include <stdexcept>
#include <string>

namespace shocklab {

enum class ErrorCode {
    invalid_state,         // non-finite or out-of-domain state
    vacuum_gradient,       // entropy gradient requested at vacuum
    undefined_eigenvalue,  // eigenvalues requested at vacuum
    config,                // malformed or inconsistent configuration
    parameter,             // parameter outside its admissible range
    out_of_range,          // position/index outside the grid or curve
    curve_continuation,    // Newton continuation failed to converge
    hypothesis_violation,  // a structural hypothesis fails numerically
    not_a_one_shock,       // shock speed not below the left 1-eigenvalue
    accuracy,              // quadrature failed to reach its tolerance
    integration,           // ODE step failure
    config_integrity,      // contraction config internally inconsistent
    runtime                // numerical failure during a run (NaN, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace shocklab
