#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace clusterspt {

/// Operands disagree on chain length.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A site index falls outside 1..L.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Input is well-formed but outside the operation's domain (boundary, lattice size, symmetry sector).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Text input could not be parsed.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested problem exceeds a configured size cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach its residual target.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

}  // namespace clusterspt
