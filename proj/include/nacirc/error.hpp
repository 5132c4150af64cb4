#pragma once

#include <stdexcept>
#include <string>

namespace nacirc {

enum class ErrorKind {
    NotPrime,
    FieldTooSmall,
    DimensionMismatch,
    ParseError,
    CycleError,
    BadReference,
    BadMode,
    DegreeExceeded,
    CapExceeded,
    InvalidCode,
    TermCapExceeded,
    SetTooSmall,
    EnumerationCapExceeded,
    WeightOverflow,
    InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, int line = 0)
        : std::runtime_error(what), kind_(kind), line_(line) {}

    ErrorKind kind() const { return kind_; }
    // 1-based input line for ParseError, 0 otherwise.
    int line() const { return line_; }

private:
    ErrorKind kind_;
    int line_;
};

// Process exit status used by the command line tool for a given error.
int exit_code_for(ErrorKind k);

}  // namespace nacirc
