#ifndef HOLEVO_ERRORS_HPP
#define HOLEVO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace holevo {

// A requested basis, matrix, or sector count would exceed a configured cap.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_ = 0.0;
};

// A probability vector failed the unit-sum check.
class DistributionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// An eigenvalue fell below the roundoff clamp window, i.e. the matrix is not
// positive semidefinite within tolerance.
class PsdViolationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace holevo

#endif
