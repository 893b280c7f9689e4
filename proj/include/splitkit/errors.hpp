#pragma once

#include <stdexcept>
#include <string>

namespace splitkit {

// Malformed input: bad group spec, non-canonical certificate data, broken schema.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Well-formed data that does not meet an operation's stated precondition
// (e.g. analyzing a certificate that fails verification).
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

// A construction or search that legitimately has no answer for this input
// (hypothesis fails, no applicable case, quotient not split).
struct inapplicable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theorem-backed consistency check failed on verified data. This never
// indicates bad input; it indicates a bug in this library.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace splitkit
