#ifndef POLYSIGN_ERRORS_HPP
#define POLYSIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polysign {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// polynomial assembly / instance frame
struct LengthMismatch : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct FrameViolation : Error { using Error::Error; };

// selection vectors
struct IdenticalSelections : Error { using Error::Error; };

// moment grid
struct InvalidGrid : Error { using Error::Error; };
struct OutOfCube : Error { using Error::Error; };

// collision search
struct CapExceeded : Error { using Error::Error; };
struct MemoryCapExceeded : Error { using Error::Error; };

// root certification / analytic checks
struct ZeroPolynomial : Error { using Error::Error; };
struct FormViolation : Error { using Error::Error; };
struct ChainViolation : Error { using Error::Error; };

// certificate documents
struct BadCertificate : Error { using Error::Error; };

} // namespace polysign

#endif
