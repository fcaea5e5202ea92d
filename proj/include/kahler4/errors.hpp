#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kahler4 {

// Frame construction was asked to normalize a (near-)zero vector.
struct ZeroVector : std::runtime_error {
    explicit ZeroVector(const std::string& what) : std::runtime_error(what) {}
};

// A metric that must be positive definite is not (or is numerically singular).
struct DegenerateMetric : std::runtime_error {
    explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

// Expression text does not match the grammar; `offset` is the byte position.
struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, std::size_t offset_)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset_) + ")"),
          offset(offset_) {}
    std::size_t offset;
};

// An identifier is neither a coordinate nor a declared parameter.
struct UnknownIdentifier : std::runtime_error {
    explicit UnknownIdentifier(const std::string& name)
        : std::runtime_error("unknown identifier '" + name + "'"), identifier(name) {}
    std::string identifier;
};

// Evaluation left the function domain (log/sqrt of non-positive, division by zero, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// (g, Omega) do not define an almost complex structure: ||J^2 + Id|| too large.
struct IncompatiblePair : std::runtime_error {
    explicit IncompatiblePair(const std::string& what) : std::runtime_error(what) {}
};

// The wedge map Lambda^1 -> Lambda^3 built from a fundamental 2-form is singular.
struct SingularWedgeMap : std::runtime_error {
    explicit SingularWedgeMap(const std::string& what) : std::runtime_error(what) {}
};

// Requested fixture name is not registered.
struct UnknownFixture : std::runtime_error {
    explicit UnknownFixture(const std::string& name)
        : std::runtime_error("unknown fixture '" + name + "'"), fixture(name) {}
    std::string fixture;
};

// A fixture parameter is missing, unknown, or outside its admissible range.
struct BadParameter : std::runtime_error {
    explicit BadParameter(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kahler4
