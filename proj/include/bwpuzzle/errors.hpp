#pragma once

#include <stdexcept>
#include <string>

namespace bwpuzzle {

// Precondition violated by an argument (out-of-range index, wrong length, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A puzzle whose hint matches none of its index sets.
class MalformedPuzzleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration that cannot be run as requested.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed frame, unknown challenge id, or other peer misbehaviour.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Connection-level failure; the caller may retry.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File missing, unreadable, or unwritable.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bwpuzzle
