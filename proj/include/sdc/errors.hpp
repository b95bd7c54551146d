#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

// Error conditions are exceptions; each maps to one failure mode of the
// public API.

struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistentEnumerator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DoublyEvenInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CertificateFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cooperative cancellation (deadline hooks in long classification runs).
struct AbortRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sdc
