#pragma once

#include <stdexcept>
#include <string>

namespace inoz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidLattice : public Error { using Error::Error; };
class NonConvergence : public Error { using Error::Error; };
class NearSingularity : public Error { using Error::Error; };
class InvalidCoupling : public Error { using Error::Error; };
class PreconditionViolation : public Error { using Error::Error; };
class SamplingExhausted : public Error { using Error::Error; };
class QuadratureNonConvergence : public Error { using Error::Error; };
class InvalidContour : public Error { using Error::Error; };
class BranchStepTooLarge : public Error { using Error::Error; };
class MonodromyFailure : public Error { using Error::Error; };
class DegenerateEigenfunction : public Error { using Error::Error; };

} // namespace inoz
