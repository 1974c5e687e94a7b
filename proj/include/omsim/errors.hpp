#pragma once

#include <stdexcept>
#include <string>

namespace omsim {

// Base class for all simulator errors.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario / topology construction problems.
class MalformedSpec : public SimError {
public:
    explicit MalformedSpec(const std::string& what) : SimError("malformed spec: " + what) {}
};

class ParseError : public SimError {
public:
    explicit ParseError(const std::string& what) : SimError("parse error: " + what) {}
};

class ValidationError : public SimError {
public:
    explicit ValidationError(const std::string& what) : SimError("validation error: " + what) {}
};

class NoPath : public SimError {
public:
    explicit NoPath(const std::string& what) : SimError("no path: " + what) {}
};

// Event engine misuse.
class PastTime : public SimError {
public:
    explicit PastTime(const std::string& what) : SimError("past time: " + what) {}
};

// Routing-field value space too small for the active flows.
class ValueSpaceExhausted : public SimError {
public:
    explicit ValueSpaceExhausted(const std::string& what)
        : SimError("value space exhausted: " + what) {}
};

class UnknownEpoch : public SimError {
public:
    explicit UnknownEpoch(const std::string& what) : SimError("unknown epoch: " + what) {}
};

// Adversary analyses.
class NoObservations : public SimError {
public:
    explicit NoObservations(const std::string& what) : SimError("no observations: " + what) {}
};

class InsufficientSamples : public SimError {
public:
    explicit InsufficientSamples(const std::string& what)
        : SimError("insufficient samples: " + what) {}
};

// Numerics.
class NegativeTime : public SimError {
public:
    explicit NegativeTime(const std::string& what) : SimError("negative time: " + what) {}
};

class NonConvergence : public SimError {
public:
    explicit NonConvergence(const std::string& what) : SimError("non-convergence: " + what) {}
};

} // namespace omsim
