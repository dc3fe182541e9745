#include "cpath/error.hpp"

namespace cpath {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NonConsecutive: return "NonConsecutive";
    case ErrorKind::RuleNotApplicable: return "RuleNotApplicable";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::RuleMismatch: return "RuleMismatch";
    case ErrorKind::UndischargedHypothesis: return "UndischargedHypothesis";
    case ErrorKind::LawFailed: return "LawFailed";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::MalformedTower: return "MalformedTower";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorKind::Parse,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace cpath
