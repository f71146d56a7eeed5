#pragma once

#include <stdexcept>
#include <string>

namespace gforge {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Expression / problem-file parsing failure; offset is a byte position in the input.
struct ParseError : Error {
    size_t offset;
    ParseError(size_t off, const std::string& what)
        : Error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// The presented product fails the Hilbert-series factorization test.
struct NotTwistingError : Error {
    int degree;
    long defect;  // expected dimension minus actual dimension
    NotTwistingError(int d, long def)
        : Error("not a twisting map: dimension defect " + std::to_string(def) +
                " at degree " + std::to_string(d)),
          degree(d), defect(def) {}
};

}  // namespace gforge
