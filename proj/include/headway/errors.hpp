#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace headway {

/// Base class for all library errors that carry a domain meaning.
/// Configuration/precondition misuse throws std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physically impossible sensor return (pulse width outside [0, 40000] us).
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// Malformed CSV input; line() is 1-based (line 1 is the header).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Paired sequences of different lengths.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Series too short for the requested differencing/fit.
class TooShort : public Error {
public:
    using Error::Error;
};

/// Stage-1 gate called with a window that is not exactly N long.
class WindowNotFull : public Error {
public:
    using Error::Error;
};

/// Stage-2 gate called with no subsequent readings.
class NoLookahead : public Error {
public:
    using Error::Error;
};

/// Reading pushed with a timestamp earlier than the previous one.
class OutOfOrder : public Error {
public:
    using Error::Error;
};

/// Every (truth, estimate) pair was skipped; no metric can be formed.
class NoPairs : public Error {
public:
    using Error::Error;
};

/// Model comparison requested with no orders.
class EmptyOrders : public Error {
public:
    using Error::Error;
};

/// An ARIMA order outside the supported six.
class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

} // namespace headway
