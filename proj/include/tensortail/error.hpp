#pragma once

#include <stdexcept>
#include <string>

namespace tensortail {

enum class ErrorKind {
    Dimension,    // incompatible shapes or index groups
    Singular,     // inverse requested for an ill-conditioned operator
    Domain,       // argument outside the operation's domain (theta <= 0, zero vector, ...)
    Regime,       // regime-restricted bound called outside its theta range
    Contract,     // precondition violated (e.g. non-Hermitian input to an eigensolver)
    Parse,        // malformed config / fixture
    Io,           // file system failure
    Infeasible,   // sampler could not produce an admissible draw
    Unsupported,  // operation not available for this ensemble / configuration
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tensortail
