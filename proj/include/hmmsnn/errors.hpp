#ifndef HMMSNN_ERRORS_HPP
#define HMMSNN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmmsnn {

// Precondition violations (bad dimensions, out-of-range indices, ...).
struct invalid_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed files (WAV headers, rasters, model files, manifests).
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures (degenerate EM components, ...).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hmmsnn

#endif
