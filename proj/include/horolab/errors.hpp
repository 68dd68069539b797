#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameters or malformed input (CLI maps this to exit code 1).
struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// A configured cap (vertex count, enumeration budget, count magnitude) would
// be exceeded. The message names the cap.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

// A vertex handle does not belong to the structure it was used with.
struct UnknownVertexError : Error {
    explicit UnknownVertexError(const std::string& msg) : Error(msg) {}
};

}  // namespace horolab
