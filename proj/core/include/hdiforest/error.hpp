#pragma once

#include <stdexcept>
#include <string>

namespace hdiforest {

/// Malformed or inconsistent input data (ingestion, schema, model files).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violations on numeric arguments are reported as
// std::invalid_argument; callers (the CLI in particular) treat those as usage
// errors.

}  // namespace hdiforest
