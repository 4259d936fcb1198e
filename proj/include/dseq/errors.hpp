#pragma once

#include <stdexcept>
#include <string>

namespace dseq {

/// Base class for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input: sequence files, schedule files, letter permutations.
/// Messages name the line number or offending character where applicable.
struct parse_error : error {
    using error::error;
};

/// Invalid parameters or violated preconditions (non-prime modulus,
/// indivisible block size, schedule/partition size mismatch, ...).
struct config_error : error {
    using error::error;
};

/// The host environment cannot supply something we need (entropy source).
struct env_error : error {
    using error::error;
};

} // namespace dseq
