#pragma once

#include <stdexcept>
#include <string>

namespace graphlearn {

// Base class for all library errors. Subclasses exist so callers (and the
// CLI) can map error classes to distinct exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph construction / query errors.
class InvalidEdgeError : public Error {
public:
    using Error::Error;
};

class DisconnectedGraphError : public Error {
public:
    using Error::Error;
};

class NotNeighborError : public Error {
public:
    using Error::Error;
};

// Transition-graph construction errors.
class TooLargeError : public Error {
public:
    using Error::Error;
};

// Environment errors.
class InvalidScheduleError : public Error {
public:
    using Error::Error;
};

class IsolatedVertexError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// Learner errors.
class DegenerateStateError : public Error {
public:
    using Error::Error;
};

// Markov chain errors.
class ReducibleChainError : public Error {
public:
    using Error::Error;
};

class UnreachableStateError : public Error {
public:
    using Error::Error;
};

class InvalidDiameterError : public Error {
public:
    using Error::Error;
};

// Bound calculator errors.
class NoisePoorlyPosedError : public Error {
public:
    using Error::Error;
};

class InvalidNoiseError : public Error {
public:
    using Error::Error;
};

class MissingParamError : public Error {
public:
    using Error::Error;
};

// Configuration / CLI errors.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace graphlearn
