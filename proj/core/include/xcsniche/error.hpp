#pragma once

#include <stdexcept>
#include <string>

namespace xcsniche {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (length mismatch, bad index, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An action-set stamp was not strictly newer than a member's last stamp.
class ClockError : public Error {
public:
    using Error::Error;
};

/// Niche statistics were requested on a population with no experienced classifier.
class NoActiveNichesError : public Error {
public:
    NoActiveNichesError() : Error("no active niches") {}
};

/// Malformed text input (population dumps, grid maps, config files).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace xcsniche
