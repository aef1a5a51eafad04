#pragma once

#include <stdexcept>
#include <string>

namespace superdenom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SUPERDENOM_ERROR(Name)                  \
    class Name : public Error {                 \
    public:                                     \
        explicit Name(const std::string& what)  \
            : Error(#Name ": " + what) {}       \
    }

SUPERDENOM_ERROR(ConfigError);       // weights from different bases, bad options
SUPERDENOM_ERROR(SpanError);         // weight outside the span of a simple-root frame
SUPERDENOM_ERROR(SpecError);         // family parameters out of range
SUPERDENOM_ERROR(UnsupportedFamily); // zero dual Coxeter number families
SUPERDENOM_ERROR(DataError);         // corrupted or inconsistent root tables
SUPERDENOM_ERROR(AssumptionError);   // Cartan matrix outside the admissible class
SUPERDENOM_ERROR(ReflectError);      // reflection at an unsuitable root
SUPERDENOM_ERROR(TranslationError);  // translation by a non level-zero weight
SUPERDENOM_ERROR(FrameError);        // incompatible series frames
SUPERDENOM_ERROR(WindowError);       // exponent or preimage outside a truncation window
SUPERDENOM_ERROR(DegenerateFactor);  // binomial factor with a zero root

#undef SUPERDENOM_ERROR

} // namespace superdenom
