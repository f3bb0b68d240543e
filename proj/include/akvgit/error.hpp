#pragma once

#include <stdexcept>
#include <string>

namespace akvgit {

enum class ErrorKind {
    invalid_input,
    dimension_mismatch,
    enumeration_too_large,
    budget_exceeded,
    unsupported,
    not_stable,
    not_maximally_degenerate,
    size_cap,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::enumeration_too_large: return "enumeration too large";
    case ErrorKind::budget_exceeded: return "budget exceeded";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::not_stable: return "not stable";
    case ErrorKind::not_maximally_degenerate: return "not maximally degenerate";
    case ErrorKind::size_cap: return "size cap exceeded";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace akvgit
