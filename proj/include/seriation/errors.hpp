#pragma once

#include <stdexcept>
#include <string>

namespace seriation {

// File/text that could not be understood (CSV, JSON, solution files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Data that parsed but is internally inconsistent (broken permutation,
// objective that does not re-evaluate, tampered result document).
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A request the chosen backend cannot express (quadratic constraints on a
// linear-only solver, tailoring constraints on the wrong model family).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or missing external-solver configuration.
class SolverConfigError : public std::runtime_error {
public:
    explicit SolverConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// The external solver ran and failed (nonzero exit, no solution file).
class ExternalSolverError : public std::runtime_error {
public:
    explicit ExternalSolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace seriation
