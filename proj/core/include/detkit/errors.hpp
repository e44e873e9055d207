#pragma once

#include <stdexcept>
#include <string>

namespace detkit {

// Base class for everything thrown on purpose by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input could not be parsed.  Carries a 1-based position when known.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
        : Error(msg), line(line_), col(col_) {}
};

// Arithmetic between polynomials over different variable contexts.
struct ContextError : Error {
    using Error::Error;
};

// A hard resource cap was hit (pair budget, basis size, degree bound, ...).
struct CapError : Error {
    using Error::Error;
};

// A mathematical hypothesis failed: the input is outside the supported
// setup, or a certified search concluded negatively.
struct MathError : Error {
    using Error::Error;
};

} // namespace detkit
