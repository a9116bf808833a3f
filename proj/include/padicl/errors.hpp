#pragma once

#include <stdexcept>
#include <string>

namespace padicl {

// Base of every error raised by the library. `kind()` is the stable name
// used in CLI reports and JSON output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define PADICL_ERROR(Name)                                                   \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what = "") : Error(#Name, what) {} \
    }

PADICL_ERROR(PrecisionExhausted);
PADICL_ERROR(DivisionByZero);
PADICL_ERROR(EmbeddingUnavailable);
PADICL_ERROR(LevelMismatch);
PADICL_ERROR(EmptyRange);
PADICL_ERROR(NotPrimitive);
PADICL_ERROR(PoleAtSpecialization);
PADICL_ERROR(GammaPole);
PADICL_ERROR(DegenerateDenominator);
PADICL_ERROR(UnsupportedWeight);
PADICL_ERROR(SpaceMismatch);
PADICL_ERROR(InvalidParameter);
PADICL_ERROR(UnboundedSupport);
PADICL_ERROR(NonConvergent);
PADICL_ERROR(InsufficientDepth);
PADICL_ERROR(UnimplementedHPolynomial);
PADICL_ERROR(BranchUndefined);
PADICL_ERROR(IndexOverflow);
PADICL_ERROR(NoStabilization);
PADICL_ERROR(KummerViolation);

#undef PADICL_ERROR

}  // namespace padicl
