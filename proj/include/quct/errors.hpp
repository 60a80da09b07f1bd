#pragma once

#include <stdexcept>
#include <string>

namespace quct {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct NotPrimePower : Error {
    explicit NotPrimePower(const std::string& msg) : Error(msg) {}
};

struct EvenCharacteristicUnsupported : Error {
    explicit EvenCharacteristicUnsupported(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

struct SizeCapExceeded : Error {
    explicit SizeCapExceeded(const std::string& msg) : Error(msg) {}
};

struct LoopsPresent : Error {
    explicit LoopsPresent(const std::string& msg) : Error(msg) {}
};

struct OverlappingSets : Error {
    explicit OverlappingSets(const std::string& msg) : Error(msg) {}
};

struct WrongClassification : Error {
    explicit WrongClassification(const std::string& msg) : Error(msg) {}
};

struct UnsupportedRingClass : Error {
    explicit UnsupportedRingClass(const std::string& msg) : Error(msg) {}
};

struct NonIntegerResult : Error {
    explicit NonIntegerResult(const std::string& msg) : Error(msg) {}
};

struct PrecisionLoss : Error {
    explicit PrecisionLoss(const std::string& msg) : Error(msg) {}
};

struct CardinalityMismatch : Error {
    explicit CardinalityMismatch(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct Disconnected : Error {
    explicit Disconnected(const std::string& msg) : Error(msg) {}
};

}  // namespace quct
