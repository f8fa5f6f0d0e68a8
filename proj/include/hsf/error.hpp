#pragma once

#include <stdexcept>
#include <string>

namespace hsf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (bad length, non-±1 entry, etc.).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Arity, head size or brute-force size larger than the configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Weight vector with no nonzero entry.
class DegenerateLtf : public Error {
public:
    using Error::Error;
};

}  // namespace hsf
