#pragma once

#include <stdexcept>
#include <string>

namespace spectra_forge {

/// Broad failure categories; the CLI maps them onto exit codes.
enum class ErrorKind {
    invalid_argument,
    parse,
    size_limit,
    hypothesis,
    check_failed,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace spectra_forge
