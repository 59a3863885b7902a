#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace luzawa {

enum class ErrorKind {
    OutOfRange,
    SigmaIsOne,
    NonPositiveState,
    WindowViolated,
    NonPositiveZ0,
    NonConvergent,
    NoRoot,
    EvalDomain,
    SigmaBetaMismatch,
    InvalidInput,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::SigmaIsOne: return "SigmaIsOne";
        case ErrorKind::NonPositiveState: return "NonPositiveState";
        case ErrorKind::WindowViolated: return "WindowViolated";
        case ErrorKind::NonPositiveZ0: return "NonPositiveZ0";
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::NoRoot: return "NoRoot";
        case ErrorKind::EvalDomain: return "EvalDomain";
        case ErrorKind::SigmaBetaMismatch: return "SigmaBetaMismatch";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Error raised by every library operation. `subject()` names the offending
/// parameter or quantity (e.g. "beta" for OutOfRange(beta)).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string subject, const std::string& detail = {})
        : std::runtime_error(compose(kind, subject, detail)),
          kind_(kind),
          subject_(std::move(subject)) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& subject() const noexcept { return subject_; }

private:
    static std::string compose(ErrorKind kind, const std::string& subject,
                               const std::string& detail) {
        std::string msg{to_string(kind)};
        if (!subject.empty()) msg += "(" + subject + ")";
        if (!detail.empty()) msg += ": " + detail;
        return msg;
    }

    ErrorKind kind_;
    std::string subject_;
};

}  // namespace luzawa
