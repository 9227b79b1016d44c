#pragma once

#include <stdexcept>
#include <string>

namespace elastinet {

enum class ErrorKind {
    InvalidCurve,
    InvalidConfig,
    InvalidInput,
    Parse,
    Validation,
    SingularAngle,
    NoOptimalRescale,
    ConstructionFailed,
    Numeric,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace elastinet
