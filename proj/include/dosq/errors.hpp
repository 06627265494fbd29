#pragma once

#include <stdexcept>
#include <string>

namespace dosq {

// Every library failure derives from Error so the CLI can map it to an exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct ConvergenceError : NumericError { using NumericError::NumericError; };

}  // namespace dosq
