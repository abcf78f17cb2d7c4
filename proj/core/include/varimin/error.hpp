#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace varimin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed files, configs or meshes. The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class OffManifoldError : public PreconditionError {
public:
    OffManifoldError(const std::string& what, double distance)
        : PreconditionError(what), distance_(distance) {}
    double distance() const { return distance_; }

private:
    double distance_;
};

class DegenerateSimplexError : public InputError {
public:
    DegenerateSimplexError(const std::string& what, int simplex)
        : InputError(what), simplex_(simplex) {}
    int simplex() const { return simplex_; }

private:
    int simplex_;
};

class NonManifoldError : public InputError {
public:
    NonManifoldError(const std::string& what, std::vector<std::pair<int, int>> edges)
        : InputError(what), edges_(std::move(edges)) {}
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    std::vector<std::pair<int, int>> edges_;
};

class GradientCheckError : public Error {
public:
    GradientCheckError(const std::string& what, double rel_error)
        : Error(what), rel_error_(rel_error) {}
    double rel_error() const { return rel_error_; }

private:
    double rel_error_;
};

// Descent run aborted (mesh degeneration, non-finite energy). Exit code 3.
class RunAbort : public Error {
public:
    using Error::Error;
};

}  // namespace varimin
