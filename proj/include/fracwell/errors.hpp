#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace fracwell {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature could not meet its tolerance within the subdivision budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what + " (achieved error estimate " + scientific(estimate) + ")"),
          estimate_(estimate)
    {
    }

    double estimate() const noexcept { return estimate_; }

private:
    static std::string scientific(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", v);
        return buf;
    }

    double estimate_;
};

/// Iterative linear algebra failed (should not happen for valid symmetric input).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fracwell
