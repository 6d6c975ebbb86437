#pragma once

#include <stdexcept>
#include <string>

namespace tfkit {

/// Base class for errors that come out of the domain logic (as opposed to
/// programming mistakes, which surface as std::logic_error).  The name is
/// stable and machine-readable; the CLI forwards it verbatim.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct BudgetExceeded : DomainError {
    explicit BudgetExceeded(const std::string& m) : DomainError("BudgetExceeded", m) {}
};

struct ShapeMismatch : DomainError {
    explicit ShapeMismatch(const std::string& m) : DomainError("ShapeMismatch", m) {}
};

struct SymmetryViolated : DomainError {
    explicit SymmetryViolated(const std::string& m) : DomainError("SymmetryViolated", m) {}
};

struct NullInterval : DomainError {
    explicit NullInterval(const std::string& m) : DomainError("NullInterval", m) {}
};

struct ParameterOutOfRange : DomainError {
    explicit ParameterOutOfRange(const std::string& m) : DomainError("ParameterOutOfRange", m) {}
};

struct RelayUndefined : DomainError {
    explicit RelayUndefined(const std::string& m) : DomainError("RelayUndefined", m) {}
};

struct MarginalMismatch : DomainError {
    explicit MarginalMismatch(const std::string& m) : DomainError("MarginalMismatch", m) {}
};

} // namespace tfkit
